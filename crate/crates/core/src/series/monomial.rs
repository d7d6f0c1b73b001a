//! Non-associative monomials: binary trees with generator-labelled leaves.
//!
//! A monomial is stored as a prefix code over bytes: `0x00 i` is the leaf
//! `X_i` (1-based) and `0x01 <left> <right>` is an internal product node.
//! Concatenation makes products allocation-cheap, and the encoding is a
//! canonical key for sparse coefficient maps.

use crate::Mode;
use std::fmt;

const LEAF: u8 = 0x00;
const NODE: u8 = 0x01;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    /// The generator `X_i` (1-based index).
    pub fn gen(i: u8) -> Monomial {
        assert!(i >= 1, "generator indices are 1-based");
        Monomial(vec![LEAF, i])
    }

    /// Tree product, canonicalized (larger subtree first) in commutative mode.
    pub fn mul(a: &Monomial, b: &Monomial, mode: Mode) -> Monomial {
        let (a, b) = match mode {
            Mode::NonCommutative => (a, b),
            Mode::Commutative => {
                if a.graded_cmp(b) == std::cmp::Ordering::Less {
                    (b, a)
                } else {
                    (a, b)
                }
            }
        };
        let mut code = Vec::with_capacity(1 + a.0.len() + b.0.len());
        code.push(NODE);
        code.extend_from_slice(&a.0);
        code.extend_from_slice(&b.0);
        Monomial(code)
    }

    /// Degree = number of leaves.
    pub fn degree(&self) -> usize {
        self.0.iter().filter(|&&b| b == LEAF).count()
    }

    /// Fixed monomial order: by degree, then by encoding.
    pub fn graded_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// `Some((left, right))` for a product node, `None` for a leaf.
    pub fn split(&self) -> Option<(Monomial, Monomial)> {
        if self.0[0] == LEAF {
            return None;
        }
        let mid = 1 + code_len(&self.0[1..]);
        Some((Monomial(self.0[1..mid].to_vec()), Monomial(self.0[mid..].to_vec())))
    }

    /// Leaf label, if this monomial is a single generator.
    pub fn as_gen(&self) -> Option<u8> {
        if self.0[0] == LEAF {
            Some(self.0[1])
        } else {
            None
        }
    }

    /// Leaf labels in left-to-right order (the parenthesis-forgetting image).
    pub fn leaves(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            if self.0[i] == LEAF {
                out.push(self.0[i + 1]);
                i += 2;
            } else {
                i += 1;
            }
        }
        out
    }

    /// Recursively re-canonicalize for the given mode. The result of
    /// arithmetic is already canonical; this is for externally built trees.
    pub fn canonicalize(&self, mode: Mode) -> Monomial {
        match self.split() {
            None => self.clone(),
            Some((a, b)) => Monomial::mul(&a.canonicalize(mode), &b.canonicalize(mode), mode),
        }
    }

    /// True if every internal node has the shape `X_i * (rest)`.
    pub fn is_right_normed(&self) -> bool {
        match self.split() {
            None => true,
            Some((l, r)) => l.as_gen().is_some() && r.is_right_normed(),
        }
    }

    /// Right-normed power `X_i(X_i(...X_i))` of the given degree.
    pub fn right_normed_power(i: u8, degree: usize) -> Monomial {
        assert!(degree >= 1);
        let mut m = Monomial::gen(i);
        for _ in 1..degree {
            m = Monomial::mul(&Monomial::gen(i), &m, Mode::NonCommutative);
        }
        m
    }

    pub fn max_generator(&self) -> u8 {
        self.leaves().into_iter().max().unwrap_or(0)
    }
}

// Length of the first complete prefix code in `bytes`.
fn code_len(bytes: &[u8]) -> usize {
    let mut need = 1usize;
    let mut i = 0usize;
    while need > 0 {
        if bytes[i] == LEAF {
            i += 2;
            need -= 1;
        } else {
            i += 1;
            need += 1;
        }
    }
    i
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.split() {
            None => write!(f, "x{}", self.0[1]),
            Some((a, b)) => write!(f, "({a}*{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_split() {
        let x1 = Monomial::gen(1);
        let x2 = Monomial::gen(2);
        let m = Monomial::mul(&x1, &x2, Mode::NonCommutative);
        assert_eq!(m.degree(), 2);
        assert_eq!(m.split(), Some((x1.clone(), x2.clone())));
        let n = Monomial::mul(&m, &x1, Mode::NonCommutative);
        assert_eq!(n.degree(), 3);
        assert_eq!(n.split().unwrap().0, m);
        assert_eq!(n.leaves(), vec![1, 2, 1]);
    }

    #[test]
    fn commutative_canonical_product_is_symmetric() {
        let x1 = Monomial::gen(1);
        let x2 = Monomial::gen(2);
        assert_eq!(
            Monomial::mul(&x1, &x2, Mode::Commutative),
            Monomial::mul(&x2, &x1, Mode::Commutative)
        );
    }

    #[test]
    fn right_normed() {
        let p = Monomial::right_normed_power(1, 3);
        assert!(p.is_right_normed());
        assert_eq!(p.to_string(), "(x1*(x1*x1))");
        let x1 = Monomial::gen(1);
        let sq = Monomial::mul(&x1, &x1, Mode::NonCommutative);
        let left = Monomial::mul(&sq, &x1, Mode::NonCommutative);
        assert!(!left.is_right_normed());
    }
}
