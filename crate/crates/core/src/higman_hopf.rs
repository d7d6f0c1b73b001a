//! The Hopf-algebraic Higman construction: the commutative polynomial
//! algebra on the symbols `t_i` and `t(m1, m2)`, the maps `t` and `t*`,
//! the twisted tensor product of `Q{X}` with `Q[T]`, the modified map
//! `x_i -> e(X_i) (x) exp(t_i)`, the induced algebra map `phi`, and the
//! bounded independence check behind Lemma A.

use crate::hopf::{self, coproduct_monomial, exp_base, log_base, TensorLeg};
use crate::magnus::{magnus, MagnusConfig};
use crate::series::{eval_univariate, Algebra, Monomial, NSeries};
use crate::term::LoopTerm;
use crate::{q_one, q_zero, Error, Mode, Q, Result};
use num::{BigInt, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Generator of the polynomial algebra `Q[T]`: `t_i` of degree 1, or
/// `t(m1, m2)` of degree `|m1| + |m2|`. In commutative mode the pair is
/// unordered and stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TSymbol {
    Ti(u8),
    Tpair(Monomial, Monomial),
}

impl TSymbol {
    pub fn pair(m1: Monomial, m2: Monomial, mode: Mode) -> TSymbol {
        if mode.is_commutative() && m2.graded_cmp(&m1) == std::cmp::Ordering::Less {
            TSymbol::Tpair(m2, m1)
        } else {
            TSymbol::Tpair(m1, m2)
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            TSymbol::Ti(_) => 1,
            TSymbol::Tpair(m1, m2) => m1.degree() + m2.degree(),
        }
    }
}

impl fmt::Display for TSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TSymbol::Ti(i) => write!(f, "t{i}"),
            TSymbol::Tpair(a, b) => write!(f, "t({a},{b})"),
        }
    }
}

/// Monomial of `Q[T]`: a multiset of symbols.
pub type TMonomial = BTreeMap<TSymbol, u32>;

pub fn tmonomial_degree(m: &TMonomial) -> usize {
    m.iter().map(|(s, k)| s.degree() * *k as usize).sum()
}

fn tmonomial_mul(a: &TMonomial, b: &TMonomial) -> TMonomial {
    let mut out = a.clone();
    for (s, k) in b {
        *out.entry(s.clone()).or_insert(0) += k;
    }
    out
}

/// Truncated commutative polynomial in the symbols `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPoly {
    terms: BTreeMap<TMonomial, Q>,
    trunc: usize,
}

impl TPoly {
    pub fn zero(trunc: usize) -> TPoly {
        TPoly { terms: BTreeMap::new(), trunc }
    }

    pub fn constant(c: Q, trunc: usize) -> TPoly {
        let mut p = TPoly::zero(trunc);
        p.add_term(TMonomial::new(), &c);
        p
    }

    pub fn one(trunc: usize) -> TPoly {
        TPoly::constant(q_one(), trunc)
    }

    pub fn symbol(s: TSymbol, trunc: usize) -> TPoly {
        let mut p = TPoly::zero(trunc);
        p.add_term([(s, 1)].into_iter().collect(), &q_one());
        p
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn add_term(&mut self, m: TMonomial, c: &Q) {
        if c.is_zero() || tmonomial_degree(&m) > self.trunc {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn coeff(&self, m: &TMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(q_zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&TMonomial::new())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term() == q_one()
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &(-c));
        }
        out
    }

    pub fn scale(&self, c: &Q) -> TPoly {
        let mut out = TPoly::zero(self.trunc);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), &(k * c));
        }
        out
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        let mut out = TPoly::zero(self.trunc);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(tmonomial_mul(ma, mb), &(ca * cb));
            }
        }
        out
    }

    /// `exp` of a polynomial with zero constant term.
    pub fn exp(&self) -> Result<TPoly> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let mut out = TPoly::one(self.trunc);
        let mut power = TPoly::one(self.trunc);
        let mut factorial = BigInt::from(1);
        for k in 1..=self.trunc {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            factorial *= k;
            out = out.add(&power.scale(&Q::new(1.into(), factorial.clone())));
        }
        Ok(out)
    }

    /// Multiplicative inverse of a unit, via the geometric series in the
    /// variable part.
    pub fn inverse(&self) -> Result<TPoly> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = q_one() / &c0;
        let mut v = self.clone();
        v.add_term(TMonomial::new(), &(-&c0));
        let v = v.scale(&(-&inv0));
        let mut out = TPoly::one(self.trunc);
        let mut power = TPoly::one(self.trunc);
        for _ in 1..=self.trunc {
            power = power.mul(&v);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out.scale(&inv0))
    }

    /// Integer power of a unit.
    pub fn pow(&self, e: i64) -> Result<TPoly> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = TPoly::one(self.trunc);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (s, k) in m {
                write!(f, "*{s}")?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `t(u (x) v)`: the bilinear map sending a monomial pair to the symbol
/// `t(m1, m2)` and annihilating constants.
pub fn t_map(u: &NSeries, v: &NSeries, trunc: usize) -> Result<TPoly> {
    if u.mode() != v.mode() {
        return Err(Error::ModeMismatch(u.mode(), v.mode()));
    }
    let mut out = TPoly::zero(trunc);
    for (mu, cu) in u.iter_terms() {
        for (mv, cv) in v.iter_terms() {
            let s = TSymbol::pair(mu.clone(), mv.clone(), u.mode());
            out.add_term([(s, 1)].into_iter().collect(), &(cu * cv));
        }
    }
    Ok(out)
}

/// All terms of the left-nested `k`-fold coproduct of a monomial in which
/// every tensor leg is a monomial (unit legs are dropped, since `t` kills
/// them).
fn nonunit_splittings(m: &Monomial, k: usize, mode: Mode) -> Vec<(Vec<Monomial>, Q)> {
    if k == 1 {
        return vec![(vec![m.clone()], q_one())];
    }
    let mut out = Vec::new();
    for (legs, c) in nonunit_splittings_allow_unit_head(m, k, mode) {
        out.push((legs, c));
    }
    out
}

/// Expand left-nested: apply the coproduct to the head leg of each term of
/// the `(k-1)`-fold splitting.
fn nonunit_splittings_allow_unit_head(m: &Monomial, k: usize, mode: Mode) -> Vec<(Vec<Monomial>, Q)> {
    if k == 1 {
        return vec![(vec![m.clone()], q_one())];
    }
    let mut out = Vec::new();
    for (legs, c) in nonunit_splittings_allow_unit_head(m, k - 1, mode) {
        let head = &legs[0];
        for ((l, r), w) in coproduct_monomial(head, mode) {
            if let (Some(l), Some(r)) = (l, r) {
                let mut new_legs = vec![l, r];
                new_legs.extend_from_slice(&legs[1..]);
                out.push((new_legs, &c * &w));
            }
        }
    }
    out
}

/// `t*` on a pair of tensor legs: `epsilon (x) epsilon` plus the `k`-fold
/// sum of products of `t`-factors; `k` is bounded by the smaller degree.
fn t_star_legs(u: &TensorLeg, v: &TensorLeg, trunc: usize, mode: Mode) -> TPoly {
    thread_local! {
        static MEMO: std::cell::RefCell<HashMap<(Monomial, Monomial, Mode, usize), TPoly>> =
            std::cell::RefCell::new(HashMap::new());
    }
    match (u, v) {
        (None, None) => TPoly::one(trunc),
        (None, Some(_)) | (Some(_), None) => TPoly::zero(trunc),
        (Some(mu), Some(mv)) => {
            let key = (mu.clone(), mv.clone(), mode, trunc);
            if let Some(p) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
                return p;
            }
            let kmax = mu.degree().min(mv.degree());
            let mut out = TPoly::zero(trunc);
            let mut factorial = BigInt::from(1);
            for k in 1..=kmax {
                factorial *= k;
                let inv_fact = Q::new(1.into(), factorial.clone());
                for (legs_u, cu) in nonunit_splittings(mu, k, mode) {
                    for (legs_v, cv) in nonunit_splittings(mv, k, mode) {
                        let mut mono = TMonomial::new();
                        for (lu, lv) in legs_u.iter().zip(&legs_v) {
                            let s = TSymbol::pair(lu.clone(), lv.clone(), mode);
                            *mono.entry(s).or_insert(0) += 1;
                        }
                        out.add_term(mono, &(&inv_fact * &(&cu * &cv)));
                    }
                }
            }
            MEMO.with(|m| m.borrow_mut().insert(key, out.clone()));
            out
        }
    }
}

/// `t*(u (x) v)` extended bilinearly to truncated series (constant parts
/// act through the counit).
pub fn t_star(u: &NSeries, v: &NSeries, trunc: usize) -> Result<TPoly> {
    if u.mode() != v.mode() {
        return Err(Error::ModeMismatch(u.mode(), v.mode()));
    }
    let mode = u.mode();
    let mut out = TPoly::constant(&u.constant_term() * &v.constant_term(), trunc);
    for (mu, cu) in u.iter_terms() {
        for (mv, cv) in v.iter_terms() {
            let p = t_star_legs(&Some(mu.clone()), &Some(mv.clone()), trunc, mode);
            out = out.add(&p.scale(&(cu * cv)));
        }
    }
    Ok(out)
}

/// Element of the twisted tensor product `Q{X} (x) Q[T]`, truncated by
/// total degree, with the product
/// `(x (x) a)(y (x) b) = sum x_(1) y_(1) (x) t*(x_(2) (x) y_(2)) a b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSeries {
    terms: BTreeMap<(TensorLeg, TMonomial), Q>,
    trunc: usize,
    mode: Mode,
}

fn mixed_key_degree(key: &(TensorLeg, TMonomial)) -> usize {
    key.0.as_ref().map(|m| m.degree()).unwrap_or(0) + tmonomial_degree(&key.1)
}

impl MixedSeries {
    pub fn zero(trunc: usize, mode: Mode) -> MixedSeries {
        MixedSeries { terms: BTreeMap::new(), trunc, mode }
    }

    pub fn one(trunc: usize, mode: Mode) -> MixedSeries {
        let mut s = MixedSeries::zero(trunc, mode);
        s.add_term((None, TMonomial::new()), &q_one());
        s
    }

    /// `x (x) p` for a truncated series and a T-polynomial.
    pub fn from_parts(x: &NSeries, p: &TPoly, trunc: usize) -> MixedSeries {
        let mut s = MixedSeries::zero(trunc, x.mode());
        for (tm, ct) in p.iter() {
            let c0 = x.constant_term();
            if !c0.is_zero() {
                s.add_term((None, tm.clone()), &(&c0 * ct));
            }
            for (m, c) in x.iter_terms() {
                s.add_term((Some(m.clone()), tm.clone()), &(c * ct));
            }
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn add_term(&mut self, key: (TensorLeg, TMonomial), c: &Q) {
        if c.is_zero() || mixed_key_degree(&key) > self.trunc {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn coeff(&self, key: &(TensorLeg, TMonomial)) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(q_zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&(None, TMonomial::new()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(TensorLeg, TMonomial), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &MixedSeries) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::DegreeMismatch(self.trunc, other.trunc));
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MixedSeries) -> Result<MixedSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MixedSeries) -> Result<MixedSeries> {
        self.checked_add(&other.scale(&-q_one()))
    }

    pub fn scale(&self, c: &Q) -> MixedSeries {
        let mut out = MixedSeries::zero(self.trunc, self.mode);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// The twisted product of Eq. (1), extended bilinearly.
    pub fn checked_mul(&self, other: &MixedSeries) -> Result<MixedSeries> {
        self.check_compatible(other)?;
        let mut out = MixedSeries::zero(self.trunc, self.mode);
        for ((xleg, ta), ca) in &self.terms {
            let dx = leg_coproduct(xleg, self.mode);
            for ((yleg, tb), cb) in &other.terms {
                let dy = leg_coproduct(yleg, self.mode);
                let tab = tmonomial_mul(ta, tb);
                let base = ca * cb;
                for ((x1, x2), cx) in &dx {
                    for ((y1, y2), cy) in &dy {
                        let left = hopf::mul_leg(x1, y1, self.mode);
                        let tfac = t_star_legs(x2, y2, self.trunc, self.mode);
                        if tfac.is_zero() {
                            continue;
                        }
                        let c = &base * &(cx * cy);
                        for (tm, ct) in tfac.iter() {
                            out.add_term((left.clone(), tmonomial_mul(tm, &tab)), &(&c * ct));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self \ a`, solved order by order in the total degree.
    pub fn left_divide(&self, a: &MixedSeries) -> Result<MixedSeries> {
        self.check_compatible(a)?;
        let b0 = self.constant_term();
        if b0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut q = MixedSeries::zero(self.trunc, self.mode);
        q.add_term((None, TMonomial::new()), &(&a.constant_term() / &b0));
        for d in 1..=self.trunc {
            let prod = self.checked_mul(&q)?;
            let residual = a.checked_sub(&prod)?;
            for (k, c) in &residual.terms {
                if mixed_key_degree(k) == d {
                    q.add_term(k.clone(), &(c / &b0));
                }
            }
        }
        Ok(q)
    }

    /// `self / b`, solved order by order in the total degree.
    pub fn right_divide(&self, b: &MixedSeries) -> Result<MixedSeries> {
        self.check_compatible(b)?;
        let b0 = b.constant_term();
        if b0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut q = MixedSeries::zero(self.trunc, self.mode);
        q.add_term((None, TMonomial::new()), &(&self.constant_term() / &b0));
        for d in 1..=self.trunc {
            let prod = q.checked_mul(b)?;
            let residual = self.checked_sub(&prod)?;
            for (k, c) in &residual.terms {
                if mixed_key_degree(k) == d {
                    q.add_term(k.clone(), &(c / &b0));
                }
            }
        }
        Ok(q)
    }
}

fn leg_coproduct(leg: &TensorLeg, mode: Mode) -> Vec<((TensorLeg, TensorLeg), Q)> {
    match leg {
        None => vec![((None, None), q_one())],
        Some(m) => coproduct_monomial(m, mode),
    }
}

impl fmt::Display for MixedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((leg, tm), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*")?;
            match leg {
                None => write!(f, "1")?,
                Some(m) => write!(f, "{m}")?,
            }
            write!(f, "(x)")?;
            if tm.is_empty() {
                write!(f, "1")?;
            } else {
                let mut inner_first = true;
                for (s, k) in tm {
                    if !inner_first {
                        write!(f, "*")?;
                    }
                    write!(f, "{s}")?;
                    if *k > 1 {
                        write!(f, "^{k}")?;
                    }
                    inner_first = false;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Algebra for MixedSeries {
    fn zero_like(&self) -> Self {
        MixedSeries::zero(self.trunc, self.mode)
    }

    fn one_like(&self) -> Self {
        MixedSeries::one(self.trunc, self.mode)
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible mixed series")
    }

    fn scale(&self, c: &Q) -> Self {
        MixedSeries::scale(self, c)
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("incompatible mixed series")
    }

    fn constant_coeff(&self) -> Q {
        self.constant_term()
    }

    fn is_zero(&self) -> bool {
        MixedSeries::is_zero(self)
    }
}

/// Generator image of the modified mixed map: `e(X_i) (x) exp(t_i)`.
pub fn magnus_tilde_generator(i: u8, trunc: usize, mode: Mode) -> Result<MixedSeries> {
    let cfg = MagnusConfig::modified(i, trunc, mode, exp_base(trunc));
    let ex = magnus(&LoopTerm::Gen(i), &cfg)?;
    let et = TPoly::symbol(TSymbol::Ti(i), trunc).exp()?;
    Ok(MixedSeries::from_parts(&ex, &et, trunc))
}

/// The homomorphic image of a word under the mixed map
/// `x_i -> e(X_i) (x) exp(t_i)`.
pub fn magnus_tilde(w: &LoopTerm, trunc: usize, mode: Mode) -> Result<MixedSeries> {
    let mut cache: HashMap<u8, MixedSeries> = HashMap::new();
    magnus_tilde_memo(w, trunc, mode, &mut cache)
}

fn magnus_tilde_memo(
    w: &LoopTerm,
    trunc: usize,
    mode: Mode,
    cache: &mut HashMap<u8, MixedSeries>,
) -> Result<MixedSeries> {
    match w {
        LoopTerm::Identity => Ok(MixedSeries::one(trunc, mode)),
        LoopTerm::Gen(i) => {
            if let Some(s) = cache.get(i) {
                return Ok(s.clone());
            }
            let s = magnus_tilde_generator(*i, trunc, mode)?;
            cache.insert(*i, s.clone());
            Ok(s)
        }
        LoopTerm::Mul(a, b) => {
            let sa = magnus_tilde_memo(a, trunc, mode, cache)?;
            let sb = magnus_tilde_memo(b, trunc, mode, cache)?;
            sa.checked_mul(&sb)
        }
        LoopTerm::LDiv(a, b) => {
            let sa = magnus_tilde_memo(a, trunc, mode, cache)?;
            let sb = magnus_tilde_memo(b, trunc, mode, cache)?;
            sa.left_divide(&sb)
        }
        LoopTerm::RDiv(a, b) => {
            let sa = magnus_tilde_memo(a, trunc, mode, cache)?;
            let sb = magnus_tilde_memo(b, trunc, mode, cache)?;
            sa.right_divide(&sb)
        }
    }
}

/// The algebra homomorphism `phi` determined by
/// `X_i -> log_e(e(X_i) (x) exp(t_i))`, with generator and monomial images
/// cached so it can be applied to many series cheaply.
pub struct PhiMap {
    trunc: usize,
    mode: Mode,
    log: NSeries,
    gen_images: HashMap<u8, MixedSeries>,
    memo: HashMap<Monomial, MixedSeries>,
}

impl PhiMap {
    pub fn new(trunc: usize, mode: Mode) -> Result<PhiMap> {
        Ok(PhiMap {
            trunc,
            mode,
            log: log_base(&exp_base(trunc), trunc)?,
            gen_images: HashMap::new(),
            memo: HashMap::new(),
        })
    }

    pub fn apply(&mut self, s: &NSeries) -> Result<MixedSeries> {
        let mut out = MixedSeries::one(self.trunc, self.mode).scale(&s.constant_term());
        for (m, c) in s.iter_terms() {
            let image = self.monomial(m)?;
            out = out.checked_add(&image.scale(c))?;
        }
        Ok(out)
    }

    fn monomial(&mut self, m: &Monomial) -> Result<MixedSeries> {
        if let Some(s) = self.memo.get(m) {
            return Ok(s.clone());
        }
        let out = match m.split() {
            None => {
                let i = m.as_gen().expect("leaf monomial");
                if let Some(s) = self.gen_images.get(&i) {
                    s.clone()
                } else {
                    let g = magnus_tilde_generator(i, self.trunc, self.mode)?;
                    let z = g.checked_sub(&MixedSeries::one(self.trunc, self.mode))?;
                    let s = eval_univariate(&self.log, &z)?;
                    self.gen_images.insert(i, s.clone());
                    s
                }
            }
            Some((a, b)) => {
                let sa = self.monomial(&a)?;
                let sb = self.monomial(&b)?;
                sa.checked_mul(&sb)?
            }
        };
        self.memo.insert(m.clone(), out.clone());
        Ok(out)
    }
}

/// One-shot convenience wrapper around [`PhiMap`].
pub fn phi_apply(s: &NSeries, trunc: usize) -> Result<MixedSeries> {
    PhiMap::new(trunc, s.mode())?.apply(s)
}

/// Result of the bounded Lemma A independence scan.
#[derive(Debug, Clone)]
pub struct LemmaAReport {
    pub generators: usize,
    pub bound: i64,
    pub vectors_checked: usize,
    /// First non-trivial exponent vector whose product collapses to 1, if
    /// any; `None` means no relation was found up to the bound.
    pub relation: Option<Vec<i64>>,
}

/// Scan all exponent vectors in `[-bound, bound]^n` over the given unit
/// `T`-polynomials; a non-trivial vector with product 1 is a relation.
pub fn lemma_a_check(generators: &[TPoly], bound: i64, trunc: usize) -> Result<LemmaAReport> {
    assert!(!generators.is_empty());
    // powers[g][(e + bound) as usize] = g^e
    let mut powers: Vec<Vec<TPoly>> = Vec::new();
    for g in generators {
        let mut row = Vec::new();
        for e in -bound..=bound {
            row.push(g.pow(e)?);
        }
        powers.push(row);
    }
    let n = generators.len();
    let width = (2 * bound + 1) as usize;
    let mut vectors_checked = 0usize;
    let mut relation = None;
    let mut idx = vec![0usize; n];
    'outer: loop {
        let exps: Vec<i64> = idx.iter().map(|&j| j as i64 - bound).collect();
        if exps.iter().any(|&e| e != 0) {
            vectors_checked += 1;
            let mut prod = TPoly::one(trunc);
            for (g, &j) in idx.iter().enumerate() {
                prod = prod.mul(&powers[g][j]);
            }
            if prod.is_one() {
                relation = Some(exps);
                break;
            }
        }
        for pos in 0..n {
            idx[pos] += 1;
            if idx[pos] < width {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    Ok(LemmaAReport { generators: n, bound, vectors_checked, relation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term;

    fn x(i: u8, n: usize) -> NSeries {
        NSeries::gen(i, n, Mode::NonCommutative)
    }

    #[test]
    fn t_map_examples() {
        let n = 4;
        let one = NSeries::one(n, Mode::NonCommutative);
        assert!(t_map(&one, &one, n).unwrap().is_zero());
        let p = t_map(&x(1, n), &x(2, n), n).unwrap();
        let sym = TSymbol::pair(Monomial::gen(1), Monomial::gen(2), Mode::NonCommutative);
        assert_eq!(p.coeff(&[(sym.clone(), 1)].into_iter().collect()), q_one());
        assert_eq!(p.iter().count(), 1);
        // constants drop under bilinearity
        let u = NSeries::one_plus_gen(1, n, Mode::NonCommutative);
        let v = NSeries::one_plus_gen(2, n, Mode::NonCommutative);
        assert_eq!(t_map(&u, &v, n).unwrap(), p);
    }

    #[test]
    fn t_star_examples() {
        let n = 4;
        let one = NSeries::one(n, Mode::NonCommutative);
        assert!(t_star(&one, &one, n).unwrap().is_one());
        // t*(mu, 1) = epsilon(mu)
        let u = x(1, n);
        assert!(t_star(&u, &one, n).unwrap().is_one() == false);
        assert!(t_star(&u, &one, n).unwrap().is_zero());
    }

    #[test]
    fn t_star_on_grouplikes_is_exp_of_t() {
        // t*(g (x) g') = exp(t(g (x) g')) for group-like g, g'.
        let n = 4;
        let mode = Mode::NonCommutative;
        let cfg = MagnusConfig::modified(2, n, mode, exp_base(n));
        let g1 = magnus(&LoopTerm::Gen(1), &cfg).unwrap();
        let g2 = magnus(&LoopTerm::Gen(2), &cfg).unwrap();
        let lhs = t_star(&g1, &g2, n).unwrap();
        let rhs = t_map(&g1, &g2, n).unwrap().exp().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_product_of_generators() {
        let n = 3;
        let mode = Mode::NonCommutative;
        let a = MixedSeries::from_parts(&x(1, n), &TPoly::one(n), n);
        let b = MixedSeries::from_parts(&x(2, n), &TPoly::one(n), n);
        let one = MixedSeries::one(n, mode);
        assert_eq!(one.checked_mul(&a).unwrap(), a);
        assert_eq!(a.checked_mul(&one).unwrap(), a);
        let p = a.checked_mul(&b).unwrap();
        let x12 = Monomial::mul(&Monomial::gen(1), &Monomial::gen(2), mode);
        assert_eq!(p.coeff(&(Some(x12), TMonomial::new())), q_one());
        let sym = TSymbol::pair(Monomial::gen(1), Monomial::gen(2), mode);
        assert_eq!(p.coeff(&(None, [(sym, 1)].into_iter().collect())), q_one());
        assert_eq!(p.iter().count(), 2);
    }

    #[test]
    fn mixed_divisions_invert_multiplication() {
        let n = 4;
        let mode = Mode::NonCommutative;
        let words = ["x1", "x2", "x1*x2", "x2\\x1"];
        let elems: Vec<_> = words
            .iter()
            .map(|t| magnus_tilde(&term::parse(t, 2).unwrap(), n, mode).unwrap())
            .collect();
        for a in &elems {
            for b in &elems {
                let q = b.left_divide(a).unwrap();
                assert_eq!(b.checked_mul(&q).unwrap(), *a);
                let q = a.right_divide(b).unwrap();
                assert_eq!(q.checked_mul(b).unwrap(), *a);
            }
        }
    }

    #[test]
    fn magnus_tilde_is_homomorphic() {
        let n = 3;
        let mode = Mode::NonCommutative;
        let pairs = [("x1", "x2"), ("x1*x2", "x1"), ("x2\\x1", "x2")];
        for (u, v) in pairs {
            let tu = term::parse(u, 2).unwrap();
            let tv = term::parse(v, 2).unwrap();
            let lhs = magnus_tilde(&LoopTerm::mul(tu.clone(), tv.clone()), n, mode).unwrap();
            let rhs = magnus_tilde(&tu, n, mode)
                .unwrap()
                .checked_mul(&magnus_tilde(&tv, n, mode).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(
            magnus_tilde(&LoopTerm::Identity, n, mode).unwrap(),
            MixedSeries::one(n, mode)
        );
    }

    #[test]
    fn phi_degree_one_part() {
        let n = 3;
        let s = x(1, n);
        let p = phi_apply(&s, n).unwrap();
        assert_eq!(p.coeff(&(Some(Monomial::gen(1)), TMonomial::new())), q_one());
        assert_eq!(
            p.coeff(&(None, [(TSymbol::Ti(1), 1)].into_iter().collect())),
            q_one()
        );
        assert!(p.constant_term().is_zero());
        let one = NSeries::one(n, Mode::NonCommutative);
        assert_eq!(phi_apply(&one, n).unwrap(), MixedSeries::one(n, Mode::NonCommutative));
    }

    #[test]
    fn phi_intertwines_the_magnus_maps() {
        // phi(M'(w)) = M~'(w) on small words, both modes.
        let n = 3;
        for mode in [Mode::NonCommutative, Mode::Commutative] {
            let cfg = MagnusConfig::modified(2, n, mode, exp_base(n));
            for w in ["x1", "x2", "x1*x2", "x2\\x1", "x1/x2"] {
                let t = term::parse(w, 2).unwrap();
                let lhs = phi_apply(&magnus(&t, &cfg).unwrap(), n).unwrap();
                let rhs = magnus_tilde(&t, n, mode).unwrap();
                assert_eq!(lhs, rhs, "word {w} mode {mode:?}");
            }
        }
    }

    #[test]
    fn lemma_a_small_cases() {
        let n = 3;
        let g = TPoly::symbol(TSymbol::Ti(1), n).exp().unwrap();
        // exp(t1)^1 != 1 (the linear term survives)
        let r = lemma_a_check(&[g.clone()], 2, n).unwrap();
        assert!(r.relation.is_none());
        assert_eq!(r.vectors_checked, 4);
        // a deliberately dependent pair has the relation (1, -1)
        let r = lemma_a_check(&[g.clone(), g], 1, n).unwrap();
        assert!(r.relation.is_some());
    }

    #[test]
    fn tpoly_inverse_and_pow() {
        let n = 4;
        let g = TPoly::symbol(TSymbol::Ti(1), n).exp().unwrap();
        let inv = g.inverse().unwrap();
        assert!(g.mul(&inv).is_one());
        assert_eq!(g.pow(-2).unwrap(), inv.mul(&inv));
        assert!(g.pow(0).unwrap().is_one());
    }
}
