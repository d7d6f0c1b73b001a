//! Property-based and bounded-exhaustive invariants across the crate.

use loopmagnus_core::higman::Higman;
use loopmagnus_core::loops::FreeAbelian;
use loopmagnus_core::magnus::{magnus, MagnusConfig};
use loopmagnus_core::series::{Monomial, NSeries};
use loopmagnus_core::term::{self, LoopTerm};
use loopmagnus_core::{Mode, Q};
use proptest::prelude::*;

fn arb_term(gens: u8, depth: u32) -> impl Strategy<Value = LoopTerm> {
    let leaf = prop_oneof![
        Just(LoopTerm::Identity),
        (1..=gens).prop_map(LoopTerm::Gen),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        (inner.clone(), inner, 0..3u8).prop_map(|(a, b, op)| match op {
            0 => LoopTerm::mul(a, b),
            1 => LoopTerm::ldiv(a, b),
            _ => LoopTerm::rdiv(a, b),
        })
    })
}

/// A unit series: 1 plus a few random low-degree terms.
fn arb_unit_series(trunc: usize, mode: Mode) -> impl Strategy<Value = NSeries> {
    let monos = all_monomials_upto(3, 2, mode);
    proptest::collection::vec((0..monos.len(), -3i64..=3), 0..5).prop_map(move |picks| {
        let mut s = NSeries::one(trunc, mode);
        for (i, c) in picks {
            s.add_coeff(&monos[i], &Q::from_integer(c.into()));
        }
        s
    })
}

fn all_monomials_of_degree(d: usize, gens: u8, mode: Mode) -> Vec<Monomial> {
    if d == 1 {
        return (1..=gens).map(Monomial::gen).collect();
    }
    let mut out = std::collections::BTreeSet::new();
    for left in 1..d {
        for a in all_monomials_of_degree(left, gens, mode) {
            for b in all_monomials_of_degree(d - left, gens, mode) {
                out.insert(Monomial::mul(&a, &b, mode));
            }
        }
    }
    out.into_iter().collect()
}

fn all_monomials_upto(d: usize, gens: u8, mode: Mode) -> Vec<Monomial> {
    (1..=d).flat_map(|k| all_monomials_of_degree(k, gens, mode)).collect()
}

fn catalan(n: usize) -> usize {
    let mut c = vec![0usize; n + 1];
    c[0] = 1;
    for i in 1..=n {
        c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
    }
    c[n]
}

#[test]
fn monomial_census_matches_catalan() {
    for gens in 1..=2u8 {
        for d in 1..=6 {
            let count = all_monomials_of_degree(d, gens, Mode::NonCommutative).len();
            assert_eq!(count, catalan(d - 1) * (gens as usize).pow(d as u32), "d={d} k={gens}");
        }
    }
}

#[test]
fn commutative_monomial_multiplication_is_symmetric() {
    let monos = all_monomials_upto(4, 2, Mode::Commutative);
    for a in &monos {
        for b in &monos {
            assert_eq!(
                Monomial::mul(a, b, Mode::Commutative),
                Monomial::mul(b, a, Mode::Commutative)
            );
        }
    }
}

#[test]
fn drop_parens_is_injective_on_right_normed_monomials() {
    // Right-normed monomials flatten to their leaf sequence; distinct trees
    // give distinct words, so flattening is injective on their span.
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0usize;
    for d in 1..=6usize {
        for leaves in 0..(2usize.pow(d as u32)) {
            let seq: Vec<u8> = (0..d).map(|i| 1 + ((leaves >> i) & 1) as u8).collect();
            let mut m = Monomial::gen(seq[d - 1]);
            for &i in seq[..d - 1].iter().rev() {
                m = Monomial::mul(&Monomial::gen(i), &m, Mode::NonCommutative);
            }
            assert!(m.is_right_normed());
            assert_eq!(m.leaves(), seq);
            assert!(seen.insert(seq), "duplicate flattening");
            count += 1;
        }
    }
    assert_eq!(count, 2 + 4 + 8 + 16 + 32 + 64);
}

#[test]
fn drop_parens_is_multiplicative() {
    let n = 4;
    let words = term::enumerate_reduced(2, 3, Mode::NonCommutative, 1 << 20).unwrap();
    let cfg = MagnusConfig::classical(2, n, Mode::NonCommutative);
    for u in words.iter().take(12) {
        for v in words.iter().take(12) {
            let su = magnus(u, &cfg).unwrap();
            let sv = magnus(v, &cfg).unwrap();
            let lhs = su.checked_mul(&sv).unwrap().drop_parens().unwrap();
            let rhs = su
                .drop_parens()
                .unwrap()
                .checked_mul(&sv.drop_parens().unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn reduce_is_idempotent(w in arb_term(2, 4), comm in any::<bool>()) {
        let mode = if comm { Mode::Commutative } else { Mode::NonCommutative };
        let r = term::reduce(&w, mode);
        prop_assert!(term::is_reduced(&r, mode));
        prop_assert_eq!(term::reduce(&r, mode), r);
    }

    #[test]
    fn reduce_preserves_magnus(w in arb_term(2, 3), comm in any::<bool>()) {
        let mode = if comm { Mode::Commutative } else { Mode::NonCommutative };
        let cfg = MagnusConfig::classical(2, 4, mode);
        let r = term::reduce(&w, mode);
        prop_assert_eq!(magnus(&w, &cfg).unwrap(), magnus(&r, &cfg).unwrap());
    }

    #[test]
    fn unit_series_form_a_loop(
        a in arb_unit_series(5, Mode::NonCommutative),
        b in arb_unit_series(5, Mode::NonCommutative),
    ) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(a.left_divide(&ab).unwrap(), b.clone());
        prop_assert_eq!(ab.right_divide(&b).unwrap(), a.clone());
        prop_assert_eq!(a.checked_mul(&a.left_divide(&b).unwrap()).unwrap(), b.clone());
        prop_assert_eq!(a.right_divide(&b).unwrap().checked_mul(&b).unwrap(), a.clone());
    }

    #[test]
    fn delta_is_a_loop_homomorphism(
        u in arb_term(2, 3),
        v in arb_term(2, 3),
        comm in any::<bool>(),
    ) {
        let mode = if comm { Mode::Commutative } else { Mode::NonCommutative };
        let fa = FreeAbelian { rank: 2 };
        let h = Higman::new(fa, mode);
        let assign: Vec<_> = (1..=2).map(|i| fa.basis(i)).collect();
        let du = h.delta(&u, &assign);
        let dv = h.delta(&v, &assign);
        prop_assert_eq!(
            h.delta(&LoopTerm::mul(u.clone(), v.clone()), &assign),
            h.la_mul(&du, &dv)
        );
        prop_assert_eq!(
            h.delta(&LoopTerm::ldiv(u.clone(), v.clone()), &assign),
            h.la_ldiv(&du, &dv)
        );
        prop_assert_eq!(
            h.delta(&LoopTerm::rdiv(u, v), &assign),
            h.la_rdiv(&du, &dv)
        );
    }

    #[test]
    fn la_loop_axioms_hold(
        u in arb_term(2, 3),
        v in arb_term(2, 3),
    ) {
        let fa = FreeAbelian { rank: 2 };
        let h = Higman::new(fa, Mode::NonCommutative);
        let assign: Vec<_> = (1..=2).map(|i| fa.basis(i)).collect();
        let x = h.delta(&u, &assign);
        let y = h.delta(&v, &assign);
        let xy = h.la_mul(&x, &y);
        prop_assert_eq!(h.la_ldiv(&x, &xy), y.clone());
        prop_assert_eq!(h.la_rdiv(&xy, &y), x.clone());
        prop_assert_eq!(h.la_mul(&x, &h.la_ldiv(&x, &y)), y.clone());
        prop_assert_eq!(h.la_mul(&h.la_rdiv(&x, &y), &y), x.clone());
    }
}
