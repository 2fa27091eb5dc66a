//! Scalar abstraction for the exact kernel.

use num_integer::Integer;
use num_traits::Signed;
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Exact signed integer scalar.
///
/// Implemented by `i32`, `i64`, `i128` and `num_bigint::BigInt`. Rational
/// intermediates use `num_rational::Ratio<S>` over the same scalar.
pub trait Scalar:
    Integer + Signed + Clone + Hash + Debug + Display + From<i32> + Send + Sync + 'static
{
    /// Shorthand for small constants.
    fn small(n: i32) -> Self {
        Self::from(n)
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + From<i32> + Send + Sync + 'static
{
}

/// Binomial coefficient as a scalar; zero for `k > n`.
pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let mut acc = S::one();
    for i in 0..k {
        acc = acc * S::from((n - i) as i32) / S::from((i + 1) as i32);
    }
    acc
}

/// `(-1)^k` as a scalar.
pub fn sign<S: Scalar>(k: usize) -> S {
    if k % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Exact conversion to `usize`; `None` for negative or oversized values.
pub fn scalar_to_usize<S: Scalar>(v: &S) -> Option<usize> {
    if v.is_negative() {
        return None;
    }
    let two = S::from(2);
    let mut pows: Vec<(S, usize)> = vec![(S::one(), 1)];
    while pows.last().unwrap().0 <= *v {
        let (p, u) = pows.last().unwrap().clone();
        pows.push((p * two.clone(), u.checked_mul(2)?));
    }
    let mut acc = 0usize;
    let mut rest = v.clone();
    for (p, u) in pows.into_iter().rev() {
        if p <= rest {
            rest = rest - p;
            acc = acc.checked_add(u)?;
        }
    }
    if rest.is_zero() {
        Some(acc)
    } else {
        None
    }
}
