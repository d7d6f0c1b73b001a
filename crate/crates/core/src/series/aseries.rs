//! Associative truncated power series: the target of the
//! parenthesis-forgetting homomorphism and the home of the associative
//! Magnus map used as a cross-check.

use super::Algebra;
use crate::{q_int, q_one, q_zero, Error, Q, Result};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse truncated series over associative words in the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASeries {
    constant: Q,
    /// `terms[d - 1]` maps length-`d` words (generator index sequences).
    terms: Vec<BTreeMap<Vec<u8>, Q>>,
    trunc: usize,
}

impl ASeries {
    pub fn zero(trunc: usize) -> ASeries {
        ASeries { constant: q_zero(), terms: vec![BTreeMap::new(); trunc], trunc }
    }

    pub fn constant(c: Q, trunc: usize) -> ASeries {
        let mut s = ASeries::zero(trunc);
        s.constant = c;
        s
    }

    pub fn one(trunc: usize) -> ASeries {
        ASeries::constant(q_one(), trunc)
    }

    /// `1 + X_i`.
    pub fn one_plus_gen(i: u8, trunc: usize) -> ASeries {
        let mut s = ASeries::one(trunc);
        s.add_coeff(&[i], &q_one());
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn constant_term(&self) -> Q {
        self.constant.clone()
    }

    pub fn coeff(&self, word: &[u8]) -> Q {
        let d = word.len();
        if d == 0 {
            return self.constant.clone();
        }
        if d > self.trunc {
            return q_zero();
        }
        self.terms[d - 1].get(word).cloned().unwrap_or_else(q_zero)
    }

    pub fn add_coeff(&mut self, word: &[u8], c: &Q) {
        if c.is_zero() {
            return;
        }
        let d = word.len();
        if d == 0 {
            self.constant += c;
            return;
        }
        if d > self.trunc {
            return;
        }
        match self.terms[d - 1].entry(word.to_vec()) {
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

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Q)> {
        self.terms.iter().flat_map(|l| l.iter())
    }

    fn check_compatible(&self, other: &ASeries) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::DegreeMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ASeries) -> Result<ASeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.constant += &other.constant;
        for (w, c) in other.iter_terms() {
            out.add_coeff(w, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &ASeries) -> Result<ASeries> {
        self.checked_add(&other.scale(&q_int(-1)))
    }

    pub fn scale(&self, c: &Q) -> ASeries {
        if c.is_zero() {
            return ASeries::zero(self.trunc);
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

    /// Concatenation product, truncated.
    pub fn checked_mul(&self, other: &ASeries) -> Result<ASeries> {
        self.check_compatible(other)?;
        let mut out = ASeries::zero(self.trunc);
        out.constant = &self.constant * &other.constant;
        if !other.constant.is_zero() {
            for (w, c) in self.iter_terms() {
                out.add_coeff(w, &(c * &other.constant));
            }
        }
        if !self.constant.is_zero() {
            for (w, c) in other.iter_terms() {
                out.add_coeff(w, &(c * &self.constant));
            }
        }
        for da in 1..self.trunc {
            for db in 1..=(self.trunc - da) {
                for (wa, ca) in &self.terms[da - 1] {
                    for (wb, cb) in &other.terms[db - 1] {
                        let mut w = wa.clone();
                        w.extend_from_slice(wb);
                        out.add_coeff(&w, &(ca * cb));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<ASeries> {
        if self.constant.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut q = ASeries::zero(self.trunc);
        q.constant = q_one() / &self.constant;
        for d in 1..=self.trunc {
            // (self * q)_d = 0 for d >= 1
            let mut rhs: BTreeMap<Vec<u8>, Q> = BTreeMap::new();
            for i in 1..=d {
                for (ws, cs) in &self.terms[i - 1] {
                    if i == d {
                        let mut w = ws.clone();
                        w.extend_from_slice(&[]);
                        let c = -(cs * &q.constant);
                        add_word(&mut rhs, w, &c);
                    } else {
                        for (wq, cq) in &q.terms[d - i - 1] {
                            let mut w = ws.clone();
                            w.extend_from_slice(wq);
                            add_word(&mut rhs, w, &(-(cs * cq)));
                        }
                    }
                }
            }
            for (w, c) in rhs {
                let v = c / &self.constant;
                if !v.is_zero() {
                    q.terms[d - 1].insert(w, v);
                }
            }
        }
        Ok(q)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.iter().all(|l| l.is_empty())
    }
}

fn add_word(map: &mut BTreeMap<Vec<u8>, Q>, w: Vec<u8>, c: &Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
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

impl fmt::Display for ASeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (w, c) in self.iter_terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*")?;
            for (k, i) in w.iter().enumerate() {
                if k > 0 {
                    write!(f, ".")?;
                }
                write!(f, "x{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Algebra for ASeries {
    fn zero_like(&self) -> Self {
        ASeries::zero(self.trunc)
    }

    fn one_like(&self) -> Self {
        ASeries::one(self.trunc)
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible series")
    }

    fn scale(&self, c: &Q) -> Self {
        ASeries::scale(self, c)
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("incompatible series")
    }

    fn constant_coeff(&self) -> Q {
        self.constant.clone()
    }

    fn is_zero(&self) -> bool {
        ASeries::is_zero(self)
    }
}
