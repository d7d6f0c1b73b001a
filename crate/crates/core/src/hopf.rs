//! Coalgebra structure on truncated free non-associative algebras: the
//! coproduct with primitive generators, group-like and primitive predicates,
//! the right-normed exponential series and order-by-order logarithms.

use crate::series::{eval_univariate, Monomial, NSeries};
use crate::{q_one, q_zero, Error, Mode, Q, Result};
use num::{BigInt, Zero};
use std::collections::{BTreeMap, HashMap};

/// Either a monomial or the algebra unit 1 in a tensor leg.
pub type TensorLeg = Option<Monomial>;

fn leg_degree(leg: &TensorLeg) -> usize {
    leg.as_ref().map(|m| m.degree()).unwrap_or(0)
}

/// Truncated element of the tensor square of `Q{X}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSeries {
    terms: BTreeMap<(TensorLeg, TensorLeg), Q>,
    trunc: usize,
    mode: Mode,
}

impl TensorSeries {
    pub fn zero(trunc: usize, mode: Mode) -> TensorSeries {
        TensorSeries { terms: BTreeMap::new(), trunc, mode }
    }

    pub fn one(trunc: usize, mode: Mode) -> TensorSeries {
        let mut t = TensorSeries::zero(trunc, mode);
        t.add_term(None, None, &q_one());
        t
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn add_term(&mut self, left: TensorLeg, right: TensorLeg, c: &Q) {
        if c.is_zero() || leg_degree(&left) + leg_degree(&right) > self.trunc {
            return;
        }
        match self.terms.entry((left, right)) {
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

    pub fn coeff(&self, left: &TensorLeg, right: &TensorLeg) -> Q {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(q_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(TensorLeg, TensorLeg), &Q)> {
        self.terms.iter()
    }

    pub fn checked_mul(&self, other: &TensorSeries) -> Result<TensorSeries> {
        if self.trunc != other.trunc {
            return Err(Error::DegreeMismatch(self.trunc, other.trunc));
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        let mut out = TensorSeries::zero(self.trunc, self.mode);
        for ((al, ar), ca) in &self.terms {
            for ((bl, br), cb) in &other.terms {
                let left = mul_leg(al, bl, self.mode);
                let right = mul_leg(ar, br, self.mode);
                out.add_term(left, right, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TensorSeries) -> Result<TensorSeries> {
        if self.trunc != other.trunc {
            return Err(Error::DegreeMismatch(self.trunc, other.trunc));
        }
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), &(-c));
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub(crate) fn mul_leg(a: &TensorLeg, b: &TensorLeg, mode: Mode) -> TensorLeg {
    match (a, b) {
        (None, None) => None,
        (Some(m), None) | (None, Some(m)) => Some(m.clone()),
        (Some(m), Some(n)) => Some(Monomial::mul(m, n, mode)),
    }
}

/// Coproduct of a single monomial, as a list of tensor terms.
/// Generators are primitive; the coproduct is multiplicative.
pub fn coproduct_monomial(m: &Monomial, mode: Mode) -> Vec<((TensorLeg, TensorLeg), Q)> {
    thread_local! {
        static MEMO: std::cell::RefCell<
            HashMap<(Monomial, Mode), Vec<((TensorLeg, TensorLeg), Q)>>,
        > = std::cell::RefCell::new(HashMap::new());
    }

    fn go(
        m: &Monomial,
        mode: Mode,
        memo: &mut HashMap<(Monomial, Mode), Vec<((TensorLeg, TensorLeg), Q)>>,
    ) -> Vec<((TensorLeg, TensorLeg), Q)> {
        if let Some(v) = memo.get(&(m.clone(), mode)) {
            return v.clone();
        }
        let v = match m.split() {
            None => vec![
                ((Some(m.clone()), None), q_one()),
                ((None, Some(m.clone())), q_one()),
            ],
            Some((a, b)) => {
                let da = go(&a, mode, memo);
                let db = go(&b, mode, memo);
                let mut acc: BTreeMap<(TensorLeg, TensorLeg), Q> = BTreeMap::new();
                for ((al, ar), ca) in &da {
                    for ((bl, br), cb) in &db {
                        let key = (mul_leg(al, bl, mode), mul_leg(ar, br, mode));
                        let slot = acc.entry(key).or_insert_with(q_zero);
                        *slot += ca * cb;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        memo.insert((m.clone(), mode), v.clone());
        v
    }
    MEMO.with(|memo| go(m, mode, &mut memo.borrow_mut()))
}

/// The coproduct extended linearly to a truncated series.
pub fn coproduct(a: &NSeries) -> TensorSeries {
    let mut out = TensorSeries::zero(a.trunc(), a.mode());
    let c0 = a.constant_term();
    if !c0.is_zero() {
        out.add_term(None, None, &c0);
    }
    for (m, c) in a.iter_terms() {
        for ((l, r), w) in coproduct_monomial(m, a.mode()) {
            out.add_term(l, r, &(&w * c));
        }
    }
    out
}

/// `a x 1 + 1 x a` for the variable part plus `2c (1 x 1)` for the
/// constant; equality with the coproduct is the primitivity test.
pub fn is_primitive(a: &NSeries) -> bool {
    let mut expected = TensorSeries::zero(a.trunc(), a.mode());
    let c0 = a.constant_term();
    if !c0.is_zero() {
        expected.add_term(None, None, &(&c0 + &c0));
    }
    for (m, c) in a.iter_terms() {
        expected.add_term(Some(m.clone()), None, c);
        expected.add_term(None, Some(m.clone()), c);
    }
    coproduct(a).checked_sub(&expected).map(|d| d.is_zero()).unwrap_or(false)
}

/// Group-like up to the truncation degree: `Delta(a) = a x a` and the
/// constant term (the counit value) is 1.
pub fn is_grouplike(a: &NSeries) -> bool {
    use num::One;
    if !a.constant_term().is_one() {
        return false;
    }
    let mut expected = TensorSeries::zero(a.trunc(), a.mode());
    let c0 = a.constant_term();
    expected.add_term(None, None, &(&c0 * &c0));
    for (m, c) in a.iter_terms() {
        expected.add_term(Some(m.clone()), None, &(c * &c0));
        expected.add_term(None, Some(m.clone()), &(c * &c0));
    }
    for (m1, c1) in a.iter_terms() {
        for (m2, c2) in a.iter_terms() {
            expected.add_term(Some(m1.clone()), Some(m2.clone()), &(c1 * c2));
        }
    }
    coproduct(a).checked_sub(&expected).map(|d| d.is_zero()).unwrap_or(false)
}

/// The default base for logarithms: the exponential series with right-normed
/// parentheses, `1 + X + X^2/2 + X(X X)/6 + ...`, in one non-commutative
/// variable.
pub fn exp_base(trunc: usize) -> NSeries {
    assert!(trunc >= 1);
    let mut s = NSeries::one(trunc, Mode::NonCommutative);
    let mut factorial = BigInt::from(1);
    for d in 1..=trunc {
        factorial *= d;
        s.set_coeff(
            Monomial::right_normed_power(1, d),
            Q::new(1.into(), factorial.clone()),
        );
    }
    s
}

/// Validity check for a base for logarithms: constant term 1 and non-zero
/// linear coefficient.
pub fn check_base(e: &NSeries) -> Result<()> {
    use num::One;
    if !e.constant_term().is_one() || e.coeff(&Monomial::gen(1)).is_zero() {
        return Err(Error::InvalidBase);
    }
    Ok(())
}

/// The logarithm series for a base `e`: the unique series `l` with zero
/// constant term such that substituting `e(X) - 1` into `l` gives back `X`
/// up to the truncation degree. Solved order by order.
pub fn log_base(e: &NSeries, trunc: usize) -> Result<NSeries> {
    check_base(e)?;
    let mode = Mode::NonCommutative;
    let lambda = e.coeff(&Monomial::gen(1));
    // z = e(X) - 1 at the requested truncation degree
    let mut z = NSeries::zero(trunc, mode);
    for (m, c) in e.iter_terms() {
        if m.degree() <= trunc {
            z.set_coeff(m.clone(), c.clone());
        }
    }
    let mut log = NSeries::zero(trunc, mode);
    let mut lambda_pow = q_one();
    for d in 1..=trunc {
        lambda_pow *= &lambda;
        let image = eval_univariate(&log, &z)?;
        // Substituting z into a degree-d monomial contributes lambda^d times
        // that monomial at degree d, so the degree-d residual fixes l_d.
        let mut target = NSeries::gen(1, trunc, mode);
        if d > 1 {
            target = NSeries::zero(trunc, mode);
        }
        let residual = target.checked_sub(&image)?;
        for (m, c) in residual.iter_terms() {
            if m.degree() == d {
                log.add_coeff(m, &(c / &lambda_pow));
            }
        }
    }
    Ok(log)
}
