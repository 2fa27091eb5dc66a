//! Elements of Q/Z, used as eigenvalue classes and character weights.
//!
//! The class `a/m` stands for the root of unity `exp(2 pi i a/m)`. Values are
//! kept reduced with `0 <= a < m` and `gcd(a, m) = 1` (so the trivial class
//! is `0/1`). Complex conjugation and the multiplicative inverse of the root
//! coincide and are both negation in Q/Z.

use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::fmt;

/// A class in Q/Z, i.e. a root of unity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QZ<S: Scalar> {
    num: S,
    den: S,
}

impl<S: Scalar> QZ<S> {
    /// Reduced class of `num/den` modulo 1. `den` must be nonzero.
    pub fn new(num: S, den: S) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q/Z class");
        let (num, den) = if den < S::zero() { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        let (mut num, den) = (num / g.clone(), den / g);
        num = num.mod_floor(&den);
        QZ { num, den }
    }

    /// The trivial class `0/1`.
    pub fn one() -> Self {
        QZ { num: S::zero(), den: S::one() }
    }

    pub fn is_one(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator of the reduced representative in `[0, 1)`.
    pub fn num(&self) -> &S {
        &self.num
    }

    /// Denominator (the multiplicative order of the root).
    pub fn order(&self) -> &S {
        &self.den
    }

    /// Complex conjugate = multiplicative inverse of the root.
    pub fn conj(&self) -> Self {
        QZ::new(-self.num.clone(), self.den.clone())
    }

    /// Class of the product of the two roots.
    pub fn mul(&self, other: &Self) -> Self {
        QZ::new(
            self.num.clone() * other.den.clone() + other.num.clone() * self.den.clone(),
            self.den.clone() * other.den.clone(),
        )
    }

    /// Whether the root raised to `e >= 0` is trivial, i.e. `order | e`.
    pub fn power_is_one(&self, e: &S) -> bool {
        e.mod_floor(&self.den).is_zero()
    }

    /// All classes of order dividing `m`: `k/m` for `0 <= k < m`.
    pub fn all_with_denominator(m: &S) -> Vec<Self> {
        let mut out = Vec::new();
        let mut k = S::zero();
        while &k < m {
            out.push(QZ::new(k.clone(), m.clone()));
            k = k + S::one();
        }
        out
    }
}

impl<S: Scalar> PartialOrd for QZ<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for QZ<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare num/den as rationals in [0, 1).
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }
}

impl<S: Scalar> fmt::Display for QZ<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<S: Scalar> fmt::Debug for QZ<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
