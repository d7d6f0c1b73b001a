//! Truncated exact arithmetic in the free (commutative) non-associative
//! algebra `Q{X}` and in its associative shadow.

mod aseries;
mod monomial;
mod nseries;

pub use aseries::ASeries;
pub use monomial::Monomial;
pub use nseries::{LowDegree, NSeries, SeriesJsonTerm};

use crate::Q;

/// A unital graded algebra with exact rational coefficients; the common
/// surface needed to substitute series into univariate series.
pub trait Algebra: Clone {
    /// Zero with the same truncation degree and mode as `self`.
    fn zero_like(&self) -> Self;
    /// One with the same truncation degree and mode as `self`.
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Q) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn constant_coeff(&self) -> Q;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&crate::q_int(-1)))
    }
}

/// Substitute `z` for the single variable of `s`, respecting the tree shape
/// of every monomial of `s`, truncated at the target's degree bound.
///
/// `z` must have zero constant term, so that the substitution converges
/// degree by degree.
pub fn eval_univariate<A: Algebra>(s: &NSeries, z: &A) -> crate::Result<A> {
    use num::Zero;
    if !z.constant_coeff().is_zero() {
        return Err(crate::Error::NonZeroConstant);
    }
    let mut memo: std::collections::HashMap<Monomial, A> = std::collections::HashMap::new();
    let mut out = z.one_like().scale(&s.constant_term());
    for (m, c) in s.iter_terms() {
        let val = subst_monomial(m, z, &mut memo);
        out = out.add(&val.scale(c));
    }
    Ok(out)
}

fn subst_monomial<A: Algebra>(
    m: &Monomial,
    z: &A,
    memo: &mut std::collections::HashMap<Monomial, A>,
) -> A {
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let v = match m.split() {
        None => z.clone(),
        Some((a, b)) => {
            let va = subst_monomial(&a, z, memo);
            let vb = subst_monomial(&b, z, memo);
            va.mul(&vb)
        }
    };
    memo.insert(m.clone(), v.clone());
    v
}
