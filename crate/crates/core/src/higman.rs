//! Higman's construction: a free abelian group `A` on formal symbols, the
//! loop `(L, A)` over any computable loop `L`, and the maps `psi` and
//! `delta` that separate reduced words which a quotient map `alpha`
//! identifies.
//!
//! The recursion for `psi` on divisions is read off the `(L, A)` division
//! laws: from `(l1, a1) / (l2, a2) = (l1/l2, a1 - a2 - <l1/l2, l2>)` and
//! `delta(u/v) = delta(u) / delta(v)` one gets
//! `psi(u/v) = psi(u) - psi(v) - <alpha(u)/alpha(v), alpha(v)>`, and
//! symmetrically for the left division.

use crate::loops::{nested_commutator, lmlt_term_apply, FreeAbelian, LoopOps};
use crate::term::LoopTerm;
use crate::{Error, Mode, Result};
use num::{BigInt, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Free generator of the abelian group `A`: either a loop-generator symbol
/// `x_i` or a bracket `<l1, l2>` of two non-identity elements of `L`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ASymbol<E: Ord> {
    Gen(u8),
    Pair(E, E),
}

impl<E: Ord + std::fmt::Debug> std::fmt::Display for ASymbol<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ASymbol::Gen(i) => write!(f, "x{i}"),
            ASymbol::Pair(a, b) => write!(f, "<{a:?},{b:?}>"),
        }
    }
}

/// Element of the free abelian group `A`: a finite integer combination of
/// symbols, with no zero entries stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct AElement<E: Ord>(pub BTreeMap<ASymbol<E>, BigInt>);

impl<E: Ord + Clone> AElement<E> {
    pub fn zero() -> AElement<E> {
        AElement(BTreeMap::new())
    }

    pub fn generator(i: u8) -> AElement<E> {
        let mut m = BTreeMap::new();
        m.insert(ASymbol::Gen(i), BigInt::from(1));
        AElement(m)
    }

    pub fn coeff(&self, s: &ASymbol<E>) -> BigInt {
        self.0.get(s).cloned().unwrap_or_default()
    }

    pub fn add_symbol(&mut self, s: ASymbol<E>, k: BigInt) {
        if k.is_zero() {
            return;
        }
        match self.0.entry(s) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(k);
            }
        }
    }

    pub fn add(&self, other: &AElement<E>) -> AElement<E> {
        let mut out = self.clone();
        for (s, k) in &other.0 {
            out.add_symbol(s.clone(), k.clone());
        }
        out
    }

    pub fn sub(&self, other: &AElement<E>) -> AElement<E> {
        let mut out = self.clone();
        for (s, k) in &other.0 {
            out.add_symbol(s.clone(), -k);
        }
        out
    }
}

/// Element of the loop `(L, A)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LAElement<E: Ord> {
    pub l: E,
    pub a: AElement<E>,
}

/// The `(L, A)` construction over a concrete loop, in either mode. In
/// commutative mode the bracket is symmetric and stored sorted.
#[derive(Debug, Clone)]
pub struct Higman<L: LoopOps> {
    pub base: L,
    pub mode: Mode,
}

impl<L: LoopOps> Higman<L> {
    pub fn new(base: L, mode: Mode) -> Higman<L> {
        Higman { base, mode }
    }

    /// `<l1, l2>` as an element of `A`; zero when either argument is the
    /// identity of `L`.
    pub fn pair(&self, l1: &L::Elem, l2: &L::Elem) -> AElement<L::Elem> {
        let e = self.base.identity();
        if *l1 == e || *l2 == e {
            return AElement::zero();
        }
        let (a, b) = if self.mode.is_commutative() && l2 < l1 {
            (l2.clone(), l1.clone())
        } else {
            (l1.clone(), l2.clone())
        };
        let mut out = AElement::zero();
        out.add_symbol(ASymbol::Pair(a, b), BigInt::from(1));
        out
    }

    pub fn identity(&self) -> LAElement<L::Elem> {
        LAElement { l: self.base.identity(), a: AElement::zero() }
    }

    /// `(l1, a1)(l2, a2) = (l1 l2, a1 + a2 + <l1, l2>)`.
    pub fn la_mul(&self, x: &LAElement<L::Elem>, y: &LAElement<L::Elem>) -> LAElement<L::Elem> {
        LAElement {
            l: self.base.mul(&x.l, &y.l),
            a: x.a.add(&y.a).add(&self.pair(&x.l, &y.l)),
        }
    }

    /// `(l1, a1) / (l2, a2) = (l1/l2, a1 - a2 - <l1/l2, l2>)`.
    pub fn la_rdiv(&self, x: &LAElement<L::Elem>, y: &LAElement<L::Elem>) -> LAElement<L::Elem> {
        let q = self.base.rdiv(&x.l, &y.l);
        LAElement {
            a: x.a.sub(&y.a).sub(&self.pair(&q, &y.l)),
            l: q,
        }
    }

    /// `(l2, a2) \ (l1, a1) = (l2\l1, a1 - a2 - <l2, l2\l1>)`.
    pub fn la_ldiv(&self, y: &LAElement<L::Elem>, x: &LAElement<L::Elem>) -> LAElement<L::Elem> {
        let q = self.base.ldiv(&y.l, &x.l);
        LAElement {
            a: x.a.sub(&y.a).sub(&self.pair(&y.l, &q)),
            l: q,
        }
    }

    /// Evaluate a free-loop word in `L` under the generator assignment
    /// `alpha[i - 1] = alpha(x_i)`.
    pub fn alpha(&self, w: &LoopTerm, alpha: &[L::Elem]) -> L::Elem {
        match w {
            LoopTerm::Identity => self.base.identity(),
            LoopTerm::Gen(i) => alpha[*i as usize - 1].clone(),
            LoopTerm::Mul(u, v) => self.base.mul(&self.alpha(u, alpha), &self.alpha(v, alpha)),
            LoopTerm::LDiv(u, v) => self.base.ldiv(&self.alpha(u, alpha), &self.alpha(v, alpha)),
            LoopTerm::RDiv(u, v) => self.base.rdiv(&self.alpha(u, alpha), &self.alpha(v, alpha)),
        }
    }

    /// `psi(w)`: the `A`-component of `delta(w)`.
    pub fn psi(&self, w: &LoopTerm, alpha: &[L::Elem]) -> AElement<L::Elem> {
        match w {
            LoopTerm::Identity => AElement::zero(),
            LoopTerm::Gen(i) => AElement::generator(*i),
            LoopTerm::Mul(u, v) => {
                let au = self.alpha(u, alpha);
                let av = self.alpha(v, alpha);
                self.psi(u, alpha).add(&self.psi(v, alpha)).add(&self.pair(&au, &av))
            }
            LoopTerm::RDiv(u, v) => {
                let au = self.alpha(u, alpha);
                let av = self.alpha(v, alpha);
                let q = self.base.rdiv(&au, &av);
                self.psi(u, alpha).sub(&self.psi(v, alpha)).sub(&self.pair(&q, &av))
            }
            LoopTerm::LDiv(u, v) => {
                let au = self.alpha(u, alpha);
                let av = self.alpha(v, alpha);
                let q = self.base.ldiv(&au, &av);
                self.psi(v, alpha).sub(&self.psi(u, alpha)).sub(&self.pair(&au, &q))
            }
        }
    }

    /// `delta(w) = (alpha(w), psi(w))`, a loop homomorphism into `(L, A)`.
    pub fn delta(&self, w: &LoopTerm, alpha: &[L::Elem]) -> LAElement<L::Elem> {
        LAElement { l: self.alpha(w, alpha), a: self.psi(w, alpha) }
    }
}

/// The `<x2, x1>`-coefficient of `psi(y)` for
/// `y = [L_{x_n}, [L_{x_{n-1}}, ... [L_{x_3}, L_{x_2}]]](x_1)` with `L`
/// free abelian on `x_1..x_n`. Expected value 1; `alpha(y) = x_1` is
/// asserted along the way.
pub fn prop5_witness(n: usize) -> BigInt {
    assert!(n >= 3);
    let gens: Vec<u8> = (2..=n as u8).rev().collect();
    let word = nested_commutator(&gens);
    let y = lmlt_term_apply(&word, &LoopTerm::Gen(1));
    let fa = FreeAbelian { rank: n };
    let h = Higman::new(fa, Mode::NonCommutative);
    let assign: Vec<_> = (1..=n).map(|i| fa.basis(i)).collect();
    assert_eq!(h.alpha(&y, &assign), fa.basis(1), "alpha(y) must be x1");
    let psi = h.psi(&y, &assign);
    psi.coeff(&ASymbol::Pair(fa.basis(2), fa.basis(1)))
}

/// Outcome of the Lemma 6 check on a pair of reduced words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lemma6Outcome<E: Ord> {
    /// Which of the three hypotheses failed, with a short description.
    HypothesisFailed(String),
    /// A symbol with coefficient 0 in `psi(w)` and the stated `±1`
    /// coefficient in `psi(w')`.
    Witness { symbol: ASymbol<E>, coeff_in_w_prime: BigInt },
    /// Hypotheses hold but no witness symbol exists (would contradict the
    /// lemma; never produced by the exhaustive tests).
    NoWitness,
}

/// Check the hypotheses of Lemma 6 for reduced words `w`, `w'` and, when
/// they hold, produce a witness symbol whose coefficient is 0 in `psi(w)`
/// and `±1` in `psi(w')`.
pub fn lemma6_check<L: LoopOps>(
    h: &Higman<L>,
    w: &LoopTerm,
    w_prime: &LoopTerm,
    alpha: &[L::Elem],
) -> Lemma6Outcome<L::Elem> {
    let comp_w = w.components();
    if comp_w.contains(w_prime) {
        return Lemma6Outcome::HypothesisFailed("w' is a component of w".into());
    }
    let aw = h.alpha(w, alpha);
    let awp = h.alpha(w_prime, alpha);
    if aw != awp {
        return Lemma6Outcome::HypothesisFailed("alpha(w) != alpha(w')".into());
    }
    // Hypothesis 3: alpha is injective on Comp(w) ∪ Comp(w') except for
    // the single identification {w, w'}.
    let mut all: BTreeSet<&LoopTerm> = comp_w.iter().collect();
    let comp_wp = w_prime.components();
    all.extend(comp_wp.iter());
    let words: Vec<&LoopTerm> = all.into_iter().collect();
    let images: Vec<L::Elem> = words.iter().map(|u| h.alpha(u, alpha)).collect();
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            if images[i] == images[j] {
                let pair_is_wwp = (words[i] == w && words[j] == w_prime)
                    || (words[i] == w_prime && words[j] == w);
                if !pair_is_wwp {
                    return Lemma6Outcome::HypothesisFailed(format!(
                        "alpha identifies {} and {}",
                        words[i], words[j]
                    ));
                }
            }
        }
    }
    let psi_w = h.psi(w, alpha);
    let psi_wp = h.psi(w_prime, alpha);
    for (s, k) in &psi_wp.0 {
        if (k == &BigInt::from(1) || k == &BigInt::from(-1)) && psi_w.coeff(s).is_zero() {
            return Lemma6Outcome::Witness { symbol: s.clone(), coeff_in_w_prime: k.clone() };
        }
    }
    Lemma6Outcome::NoWitness
}

/// Image counts behind Corollary 1 for a component-closed set of reduced
/// words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary1Report {
    pub set_size: usize,
    pub alpha_image_size: usize,
    pub delta_image_size: usize,
    /// `alpha` non-injective on the set implies strictly more `delta`
    /// images than `alpha` images.
    pub holds: bool,
}

/// Compute `|alpha(S)|` and `|delta(S)|` for a component-closed `S` and
/// check the Corollary 1 implication. Errors if `S` is not closed under
/// components.
pub fn corollary1_check<L: LoopOps>(
    h: &Higman<L>,
    s: &BTreeSet<LoopTerm>,
    alpha: &[L::Elem],
) -> Result<Corollary1Report> {
    for w in s {
        for c in w.components() {
            if !s.contains(&c) {
                return Err(Error::NotComponentClosed(c.to_string()));
            }
        }
    }
    let alpha_images: BTreeSet<_> = s.iter().map(|w| h.alpha(w, alpha)).collect();
    let delta_images: BTreeSet<_> = s.iter().map(|w| h.delta(w, alpha)).collect();
    let set_size = s.len();
    let alpha_image_size = alpha_images.len();
    let delta_image_size = delta_images.len();
    let holds = alpha_image_size >= set_size || delta_image_size > alpha_image_size;
    Ok(Corollary1Report { set_size, alpha_image_size, delta_image_size, holds })
}

/// Closure of a set of words under taking components.
pub fn component_closure(words: &[LoopTerm]) -> BTreeSet<LoopTerm> {
    let mut out = BTreeSet::new();
    for w in words {
        out.extend(w.components());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{int_pair_grid, IntPairCommLoop};
    use crate::term;

    fn fa_setup(rank: usize, mode: Mode) -> (Higman<FreeAbelian>, Vec<Vec<BigInt>>) {
        let fa = FreeAbelian { rank };
        let assign = (1..=rank).map(|i| fa.basis(i)).collect();
        (Higman::new(fa, mode), assign)
    }

    #[test]
    fn la_mul_examples() {
        let (h, a) = fa_setup(2, Mode::NonCommutative);
        let e = h.identity();
        let l1 = h.delta(&LoopTerm::Gen(1), &a);
        let l2 = h.delta(&LoopTerm::Gen(2), &a);
        // (e,0)(l,0) has no bracket term
        let x = LAElement { l: a[0].clone(), a: AElement::zero() };
        assert_eq!(h.la_mul(&e, &x), x);
        assert_eq!(h.la_mul(&x, &e), x);
        // bracket appears for non-identity factors
        let p = h.la_mul(
            &LAElement { l: a[0].clone(), a: AElement::zero() },
            &LAElement { l: a[1].clone(), a: AElement::zero() },
        );
        assert_eq!(p.a.coeff(&ASymbol::Pair(a[0].clone(), a[1].clone())), BigInt::from(1));
        // delta is multiplicative on a simple pair
        let w = term::parse("x1*x2", 2).unwrap();
        assert_eq!(h.delta(&w, &a), h.la_mul(&l1, &l2));
    }

    #[test]
    fn la_divisions_invert_la_mul() {
        let (h, a) = fa_setup(3, Mode::NonCommutative);
        let words = ["x1", "x2", "x1*x2", "x3\\x1", "(x1*x2)/x3", "e"];
        let elems: Vec<_> =
            words.iter().map(|t| h.delta(&term::parse(t, 3).unwrap(), &a)).collect();
        for x in &elems {
            assert_eq!(h.la_rdiv(x, x), h.identity());
            for y in &elems {
                let xy = h.la_mul(x, y);
                assert_eq!(h.la_rdiv(&xy, y), *x);
                assert_eq!(h.la_ldiv(x, &xy), *y);
                assert_eq!(h.la_mul(x, &h.la_ldiv(x, y)), *y);
                assert_eq!(h.la_mul(&h.la_rdiv(x, y), y), *x);
            }
        }
    }

    #[test]
    fn la_axioms_over_int_pair_loop() {
        let base = IntPairCommLoop;
        let h = Higman::new(base, Mode::NonCommutative);
        let elems: Vec<_> = int_pair_grid(1)
            .into_iter()
            .map(|l| LAElement { l, a: AElement::generator(1) })
            .collect();
        for x in &elems {
            for y in &elems {
                let xy = h.la_mul(x, y);
                assert_eq!(h.la_rdiv(&xy, y), *x);
                assert_eq!(h.la_ldiv(x, &xy), *y);
            }
        }
    }

    #[test]
    fn psi_examples() {
        let (h, a) = fa_setup(3, Mode::NonCommutative);
        assert_eq!(h.psi(&LoopTerm::Identity, &a), AElement::zero());
        let w = term::parse("x1*x2", 3).unwrap();
        let psi = h.psi(&w, &a);
        assert_eq!(psi.coeff(&ASymbol::Gen(1)), BigInt::from(1));
        assert_eq!(psi.coeff(&ASymbol::Gen(2)), BigInt::from(1));
        assert_eq!(psi.coeff(&ASymbol::Pair(a[0].clone(), a[1].clone())), BigInt::from(1));
        assert_eq!(psi.0.len(), 3);
    }

    #[test]
    fn psi_of_commutator_word_by_hand() {
        // y = x3\(x2\(x3*(x2*x1))); hand recursion gives
        // Gen(1) + <x2,x1> + <x3,x2+x1> - <x2,x3+x1> - <x3,x1>.
        let (h, a) = fa_setup(3, Mode::NonCommutative);
        let fa = FreeAbelian { rank: 3 };
        let y = term::parse("x3\\(x2\\(x3*(x2*x1)))", 3).unwrap();
        let psi = h.psi(&y, &a);
        let mut expect = AElement::generator(1);
        let add = |e: &mut AElement<Vec<BigInt>>, l: Vec<BigInt>, r: Vec<BigInt>, k: i64| {
            e.add_symbol(ASymbol::Pair(l, r), BigInt::from(k));
        };
        let x1 = fa.basis(1);
        let x2 = fa.basis(2);
        let x3 = fa.basis(3);
        add(&mut expect, x2.clone(), x1.clone(), 1);
        add(&mut expect, x3.clone(), fa.mul(&x2, &x1), 1);
        add(&mut expect, x2.clone(), fa.mul(&x3, &x1), -1);
        add(&mut expect, x3.clone(), x1.clone(), -1);
        assert_eq!(psi, expect);
        assert_eq!(psi.coeff(&ASymbol::Pair(x2, x1)), BigInt::from(1));
    }

    #[test]
    fn delta_is_a_homomorphism() {
        let (h, a) = fa_setup(2, Mode::NonCommutative);
        let words: Vec<_> = ["x1", "x2", "x1*x2", "x2\\x1", "x1/(x2*x2)", "e", "(x1*x1)*x2"]
            .iter()
            .map(|t| term::parse(t, 2).unwrap())
            .collect();
        for u in &words {
            for v in &words {
                let du = h.delta(u, &a);
                let dv = h.delta(v, &a);
                assert_eq!(h.delta(&LoopTerm::mul(u.clone(), v.clone()), &a), h.la_mul(&du, &dv));
                assert_eq!(h.delta(&LoopTerm::ldiv(u.clone(), v.clone()), &a), h.la_ldiv(&du, &dv));
                assert_eq!(h.delta(&LoopTerm::rdiv(u.clone(), v.clone()), &a), h.la_rdiv(&du, &dv));
            }
        }
    }

    #[test]
    fn commutative_pairs_are_symmetric() {
        let fa = FreeAbelian { rank: 2 };
        let h = Higman::new(fa, Mode::Commutative);
        let x1 = fa.basis(1);
        let x2 = fa.basis(2);
        assert_eq!(h.pair(&x1, &x2), h.pair(&x2, &x1));
        let hn = Higman::new(fa, Mode::NonCommutative);
        assert_ne!(hn.pair(&x1, &x2), hn.pair(&x2, &x1));
    }

    #[test]
    fn prop5_witness_values() {
        for n in 3..=6 {
            assert_eq!(prop5_witness(n), BigInt::from(1), "n = {n}");
        }
    }

    #[test]
    fn lemma6_hypothesis_failures() {
        let (h, a) = fa_setup(2, Mode::NonCommutative);
        let w = LoopTerm::Gen(1);
        assert_eq!(
            lemma6_check(&h, &w, &w, &a),
            Lemma6Outcome::HypothesisFailed("w' is a component of w".into())
        );
        let wp = LoopTerm::Gen(2);
        assert_eq!(
            lemma6_check(&h, &w, &wp, &a),
            Lemma6Outcome::HypothesisFailed("alpha(w) != alpha(w')".into())
        );
        // trivial quotient collapses components: hypothesis 3 fails
        let fa = FreeAbelian { rank: 0 };
        let ht = Higman::new(fa, Mode::NonCommutative);
        let trivial = vec![fa.identity(), fa.identity()];
        let w = term::parse("x1*x2", 2).unwrap();
        let wp = term::parse("x2*x1", 2).unwrap();
        assert!(matches!(
            lemma6_check(&ht, &w, &wp, &trivial),
            Lemma6Outcome::HypothesisFailed(_)
        ));
    }

    #[test]
    fn lemma6_witness_for_abelianized_pair() {
        // alpha = abelianization: x1*x2 and x2*x1 collapse; the bracket
        // <x2,x1> appears with coefficient 1 in psi(x2*x1) and is absent
        // from psi(x1*x2).
        let (h, a) = fa_setup(2, Mode::NonCommutative);
        let w = term::parse("x1*x2", 2).unwrap();
        let wp = term::parse("x2*x1", 2).unwrap();
        match lemma6_check(&h, &w, &wp, &a) {
            Lemma6Outcome::Witness { symbol, coeff_in_w_prime } => {
                let fa = FreeAbelian { rank: 2 };
                assert_eq!(symbol, ASymbol::Pair(fa.basis(2), fa.basis(1)));
                assert_eq!(coeff_in_w_prime, BigInt::from(1));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn corollary1_examples() {
        let (h, a) = fa_setup(2, Mode::NonCommutative);
        // alpha injective on Comp(x1*x2): vacuously true
        let s = component_closure(&[term::parse("x1*x2", 2).unwrap()]);
        let r = corollary1_check(&h, &s, &a).unwrap();
        assert_eq!(r.alpha_image_size, r.set_size);
        assert!(r.holds);
        // abelianization collapses x1*x2 and x2*x1, delta separates them
        let s = component_closure(&[
            term::parse("x1*x2", 2).unwrap(),
            term::parse("x2*x1", 2).unwrap(),
        ]);
        assert_eq!(s.len(), 5);
        let r = corollary1_check(&h, &s, &a).unwrap();
        assert_eq!(r.alpha_image_size, 4);
        assert_eq!(r.delta_image_size, 5);
        assert!(r.holds);
        // non-closed set errors
        let mut bad = BTreeSet::new();
        bad.insert(term::parse("x1*x2", 2).unwrap());
        assert!(corollary1_check(&h, &bad, &a).is_err());
    }
}
