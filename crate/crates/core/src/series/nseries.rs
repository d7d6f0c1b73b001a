//! Sparse truncated series over non-associative monomials.

use super::{ASeries, Algebra, Monomial};
use crate::{q_int, q_one, q_zero, Error, Mode, Q, Result};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A truncated element of `Q{X}` (or `Q_c{X}` in commutative mode):
/// a rational constant term plus a sparse map from monomials of degree
/// `1..=trunc` to non-zero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NSeries {
    constant: Q,
    /// `terms[d - 1]` holds the degree-`d` coefficients.
    terms: Vec<BTreeMap<Monomial, Q>>,
    trunc: usize,
    mode: Mode,
}

/// Result of `low_degree`: either the exact lowest degree of the
/// variable part, or the honest statement that all stored terms vanish,
/// so the lowest degree (if any) exceeds the truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowDegree {
    Exact(usize),
    /// Every term of degree `<= trunc` vanishes; the value is `trunc + 1`.
    AtLeast(usize),
}

impl LowDegree {
    /// The guaranteed lower bound in either case.
    pub fn bound(self) -> usize {
        match self {
            LowDegree::Exact(d) | LowDegree::AtLeast(d) => d,
        }
    }

    pub fn is_at_least(self, n: usize) -> bool {
        self.bound() >= n
    }
}

impl fmt::Display for LowDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowDegree::Exact(d) => write!(f, "{d}"),
            LowDegree::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

impl NSeries {
    pub fn zero(trunc: usize, mode: Mode) -> NSeries {
        NSeries {
            constant: q_zero(),
            terms: vec![BTreeMap::new(); trunc],
            trunc,
            mode,
        }
    }

    pub fn constant(c: Q, trunc: usize, mode: Mode) -> NSeries {
        let mut s = NSeries::zero(trunc, mode);
        s.constant = c;
        s
    }

    pub fn one(trunc: usize, mode: Mode) -> NSeries {
        NSeries::constant(q_one(), trunc, mode)
    }

    /// The bare generator `X_i`.
    pub fn gen(i: u8, trunc: usize, mode: Mode) -> NSeries {
        let mut s = NSeries::zero(trunc, mode);
        s.set_coeff(Monomial::gen(i), q_one());
        s
    }

    /// `1 + X_i`, the classical Magnus image of a generator.
    pub fn one_plus_gen(i: u8, trunc: usize, mode: Mode) -> NSeries {
        let mut s = NSeries::gen(i, trunc, mode);
        s.constant = q_one();
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn constant_term(&self) -> Q {
        self.constant.clone()
    }

    /// Coefficient of a monomial (canonicalized for the series mode).
    pub fn coeff(&self, m: &Monomial) -> Q {
        let m = m.canonicalize(self.mode);
        let d = m.degree();
        if d == 0 || d > self.trunc {
            return q_zero();
        }
        self.terms[d - 1].get(&m).cloned().unwrap_or_else(q_zero)
    }

    /// Sets a coefficient; the monomial is canonicalized, zero coefficients
    /// are removed, degrees beyond the truncation are discarded.
    pub fn set_coeff(&mut self, m: Monomial, c: Q) {
        let m = m.canonicalize(self.mode);
        let d = m.degree();
        if d == 0 {
            self.constant = c;
            return;
        }
        if d > self.trunc {
            return;
        }
        if c.is_zero() {
            self.terms[d - 1].remove(&m);
        } else {
            self.terms[d - 1].insert(m, c);
        }
    }

    pub fn add_coeff(&mut self, m: &Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        let d = m.degree();
        if d > self.trunc {
            return;
        }
        let slot = self.terms[d - 1].entry(m.clone()).or_insert_with(q_zero);
        *slot += c;
        if slot.is_zero() {
            self.terms[d - 1].remove(m);
        }
    }

    /// Iterate `(monomial, coefficient)` over the variable part, by degree.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().flat_map(|level| level.iter())
    }

    /// Number of stored non-zero terms (the constant excluded).
    pub fn term_count(&self) -> usize {
        self.terms.iter().map(|l| l.len()).sum()
    }

    fn check_compatible(&self, other: &NSeries) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::DegreeMismatch(self.trunc, other.trunc));
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &NSeries) -> Result<NSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.constant += &other.constant;
        for (m, c) in other.iter_terms() {
            out.add_coeff(m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NSeries) -> Result<NSeries> {
        self.checked_add(&other.scale(&q_int(-1)))
    }

    pub fn scale(&self, c: &Q) -> NSeries {
        if c.is_zero() {
            return NSeries::zero(self.trunc, self.mode);
        }
        let mut out = self.clone();
        out.constant *= c;
        for level in &mut out.terms {
            for v in level.values_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Distributive tree product, discarding degrees above the truncation.
    pub fn checked_mul(&self, other: &NSeries) -> Result<NSeries> {
        self.check_compatible(other)?;
        let mut out = NSeries::zero(self.trunc, self.mode);
        out.constant = &self.constant * &other.constant;
        if !other.constant.is_zero() {
            for (m, c) in self.iter_terms() {
                out.add_coeff(m, &(c * &other.constant));
            }
        }
        if !self.constant.is_zero() {
            for (m, c) in other.iter_terms() {
                out.add_coeff(m, &(c * &self.constant));
            }
        }
        for da in 1..=self.trunc {
            if self.terms[da - 1].is_empty() {
                continue;
            }
            for db in 1..=(self.trunc - da) {
                for (ma, ca) in &self.terms[da - 1] {
                    for (mb, cb) in &other.terms[db - 1] {
                        let m = Monomial::mul(ma, mb, self.mode);
                        out.add_coeff(&m, &(ca * cb));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `b.left_divide(a)` returns `b \ a`, the unique `q` with `b * q = a`
    /// up to the truncation degree. `b` (self) must be a unit.
    pub fn left_divide(&self, a: &NSeries) -> Result<NSeries> {
        self.check_compatible(a)?;
        if self.constant.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut q = NSeries::zero(self.trunc, self.mode);
        q.constant = &a.constant / &self.constant;
        for d in 1..=self.trunc {
            // (b*q)_d = b_0 q_d + b_d q_0 + sum_{i=1}^{d-1} b_i (x) q_{d-i}
            let mut rhs: BTreeMap<Monomial, Q> = a.terms[d - 1].clone();
            if !q.constant.is_zero() {
                for (m, c) in &self.terms[d - 1] {
                    add_into(&mut rhs, m.clone(), &(-(c * &q.constant)));
                }
            }
            for i in 1..d {
                for (mb, cb) in &self.terms[i - 1] {
                    for (mq, cq) in &q.terms[d - i - 1] {
                        let m = Monomial::mul(mb, mq, self.mode);
                        add_into(&mut rhs, m, &(-(cb * cq)));
                    }
                }
            }
            for (m, c) in rhs {
                q.terms[d - 1].insert(m, c / &self.constant);
            }
        }
        Ok(q)
    }

    /// `a.right_divide(b)` returns `a / b`, the unique `q` with `q * b = a`
    /// up to the truncation degree. `b` must be a unit.
    pub fn right_divide(&self, b: &NSeries) -> Result<NSeries> {
        self.check_compatible(b)?;
        if b.constant.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut q = NSeries::zero(self.trunc, self.mode);
        q.constant = &self.constant / &b.constant;
        for d in 1..=self.trunc {
            let mut rhs: BTreeMap<Monomial, Q> = self.terms[d - 1].clone();
            if !q.constant.is_zero() {
                for (m, c) in &b.terms[d - 1] {
                    add_into(&mut rhs, m.clone(), &(-(c * &q.constant)));
                }
            }
            for i in 1..d {
                for (mq, cq) in &q.terms[i - 1] {
                    for (mb, cb) in &b.terms[d - i - 1] {
                        let m = Monomial::mul(mq, mb, self.mode);
                        add_into(&mut rhs, m, &(-(cq * cb)));
                    }
                }
            }
            for (m, c) in rhs {
                q.terms[d - 1].insert(m, c / &b.constant);
            }
        }
        Ok(q)
    }

    /// Lowest degree of the variable part, as a membership test for powers
    /// of the augmentation ideal. Saturates honestly at `trunc + 1`.
    pub fn low_degree(&self) -> LowDegree {
        for d in 1..=self.trunc {
            if !self.terms[d - 1].is_empty() {
                return LowDegree::Exact(d);
            }
        }
        LowDegree::AtLeast(self.trunc + 1)
    }

    /// The parenthesis-forgetting homomorphism onto associative series.
    pub fn drop_parens(&self) -> Result<ASeries> {
        if self.mode.is_commutative() {
            return Err(Error::CommutativeFlatten);
        }
        let mut out = ASeries::constant(self.constant.clone(), self.trunc);
        for (m, c) in self.iter_terms() {
            out.add_coeff(&m.leaves(), c);
        }
        Ok(out)
    }

    /// Largest generator index appearing with non-zero coefficient.
    pub fn max_generator(&self) -> u8 {
        self.iter_terms().map(|(m, _)| m.max_generator()).max().unwrap_or(0)
    }

    /// Parse the series text format `c0 + c1*(m1) + ...` where each monomial
    /// uses the word grammar restricted to `*` over generators.
    pub fn parse(text: &str, trunc: usize, mode: Mode, alphabet: u8) -> Result<NSeries> {
        let mut out = NSeries::zero(trunc, mode);
        for chunk in split_top_level_plus(text) {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let (coeff_text, mono_text) = match split_coeff(chunk) {
                Some((c, m)) => (c, Some(m)),
                None => (chunk, None),
            };
            let coeff = parse_rational(coeff_text)?;
            match mono_text {
                None => out.constant += coeff,
                Some(mt) => {
                    let t = crate::term::parse(mt, alphabet)?;
                    let m = term_to_monomial(&t).ok_or_else(|| Error::Parse {
                        pos: 0,
                        msg: "monomials admit only products of generators".into(),
                    })?;
                    let cur = out.coeff(&m);
                    out.set_coeff(m, cur + coeff);
                }
            }
        }
        Ok(out)
    }

    /// JSON export: a list of `{monomial, num, den}` entries, the constant
    /// under monomial `"1"`.
    pub fn to_json_terms(&self) -> Vec<SeriesJsonTerm> {
        let mut out = Vec::new();
        if !self.constant.is_zero() {
            out.push(SeriesJsonTerm {
                monomial: "1".into(),
                num: self.constant.numer().to_string(),
                den: self.constant.denom().to_string(),
            });
        }
        for (m, c) in self.iter_terms() {
            out.push(SeriesJsonTerm {
                monomial: m.to_string(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            });
        }
        out
    }
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct SeriesJsonTerm {
    pub monomial: String,
    pub num: String,
    pub den: String,
}

fn add_into(map: &mut BTreeMap<Monomial, Q>, m: Monomial, c: &Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

fn term_to_monomial(t: &crate::term::LoopTerm) -> Option<Monomial> {
    use crate::term::LoopTerm::*;
    match t {
        Gen(i) => Some(Monomial::gen(*i)),
        Mul(a, b) => Some(Monomial::mul(
            &term_to_monomial(a)?,
            &term_to_monomial(b)?,
            Mode::NonCommutative,
        )),
        _ => None,
    }
}

fn split_top_level_plus(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

// "c*(mono)" -> (c, mono); plain constants return None.
fn split_coeff(chunk: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in chunk.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => return Some((&chunk[..i], &chunk[i + 1..])),
            _ => {}
        }
    }
    None
}

fn parse_rational(text: &str) -> Result<Q> {
    let text = text.trim();
    let parse_err = || Error::Parse { pos: 0, msg: format!("invalid rational '{text}'") };
    if let Some((n, d)) = text.split_once('/') {
        let n: num::BigInt = n.trim().parse().map_err(|_| parse_err())?;
        let d: num::BigInt = d.trim().parse().map_err(|_| parse_err())?;
        if d.is_zero() {
            return Err(parse_err());
        }
        Ok(Q::new(n, d))
    } else {
        let n: num::BigInt = text.parse().map_err(|_| parse_err())?;
        Ok(Q::from_integer(n))
    }
}

impl fmt::Display for NSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (m, c) in self.iter_terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Algebra for NSeries {
    fn zero_like(&self) -> Self {
        NSeries::zero(self.trunc, self.mode)
    }

    fn one_like(&self) -> Self {
        NSeries::one(self.trunc, self.mode)
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible series")
    }

    fn scale(&self, c: &Q) -> Self {
        NSeries::scale(self, c)
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("incompatible series")
    }

    fn constant_coeff(&self) -> Q {
        self.constant.clone()
    }

    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.term_count() == 0
    }
}
