//! Small exact polynomial types: univariate and bivariate with integer
//! coefficients. Only the operations the invariants need are provided.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Dense univariate polynomial over `S`; `coeffs[i]` multiplies `t^i`.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![S::one()] }
    }

    pub fn monomial(c: S, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `(1 - t)^k` (for `k >= 0`).
    pub fn one_minus_t_pow(k: usize) -> Self {
        let base = Poly::from_coeffs(vec![S::one(), -S::one()]);
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `(t - 1)^k` (for `k >= 0`).
    pub fn t_minus_one_pow(k: usize) -> Self {
        let p = Poly::<S>::one_minus_t_pow(k);
        if k % 2 == 0 {
            p
        } else {
            p.scale(&-S::one())
        }
    }

    /// Coefficient-reversal `t^d p(1/t)` for the given formal degree `d`
    /// (which must be at least `degree()`).
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.degree() <= d as isize, "reverse degree too small");
        let mut coeffs = vec![S::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = a.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    /// Substitute `t -> t^k`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut coeffs = vec![S::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = a.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    /// Drop all terms of degree > `k`.
    pub fn truncate_deg(&self, k: usize) -> Self {
        Poly::from_coeffs(self.coeffs.iter().take(k + 1).cloned().collect())
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    /// Exact polynomial division; `None` if the division leaves a remainder
    /// or requires non-integer quotient coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dd = divisor.degree() as usize;
        if self.degree() < divisor.degree() {
            return None;
        }
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let qdeg = rem.len() - 1 - dd;
        let mut quot = vec![S::zero(); qdeg + 1];
        for i in (0..=qdeg).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * c.clone();
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(quot))
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*t^{}", c, i)?;
            first = false;
        }
        Ok(())
    }
}

/// Sparse bivariate polynomial in `u, v`. Negative exponents are allowed in
/// intermediates (Laurent terms); callers assert polynomiality at the end.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly<S: Scalar> {
    terms: BTreeMap<(i64, i64), S>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        BiPoly::monomial(S::one(), 0, 0)
    }

    pub fn monomial(c: S, i: i64, j: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: i64, j: i64) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, c: S, i: i64, j: i64) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in other.terms.iter() {
            out.add_term(c.clone(), *i, *j);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for ((i1, j1), a) in self.terms.iter() {
            for ((i2, j2), b) in other.terms.iter() {
                out.add_term(a.clone() * b.clone(), i1 + i2, j1 + j2);
            }
        }
        out
    }

    /// Substitute a univariate polynomial in the single variable `w` by
    /// `w = u^a v^b` (exponents may be negative).
    pub fn from_uni(p: &Poly<S>, a: i64, b: i64) -> Self {
        let mut out = BiPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(c.clone(), a * k as i64, b * k as i64);
        }
        out
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|(i, j)| *i >= 0 && *j >= 0)
    }

    /// Exact division by `u*v`; fails if some term lacks the factor.
    pub fn div_uv(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for ((i, j), c) in self.terms.iter() {
            if *i < 1 || *j < 1 {
                return None;
            }
            terms.insert((i - 1, j - 1), c.clone());
        }
        Some(BiPoly { terms })
    }

    /// Specialize `v = u`, returning a univariate polynomial in `u`.
    /// Fails if some total exponent is negative.
    pub fn specialize_diagonal(&self) -> Option<Poly<S>> {
        let mut acc: BTreeMap<i64, S> = BTreeMap::new();
        for ((i, j), c) in self.terms.iter() {
            let e = i + j;
            if e < 0 {
                return None;
            }
            let slot = acc.entry(e).or_insert_with(S::zero);
            *slot = slot.clone() + c.clone();
        }
        let deg = acc.keys().next_back().cloned().unwrap_or(-1);
        let mut coeffs = vec![S::zero(); (deg + 1).max(0) as usize];
        for (e, c) in acc {
            if !c.is_zero() {
                coeffs[e as usize] = c;
            }
        }
        Some(Poly::from_coeffs(coeffs))
    }
}

impl<S: Scalar> fmt::Debug for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*u^{}v^{}", c, i, j)?;
            first = false;
        }
        Ok(())
    }
}
