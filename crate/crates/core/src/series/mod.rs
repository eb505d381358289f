//! Truncated Laurent series with exact coefficients, and the generating
//! functions built on them.

mod gf;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(crate) use gf::binomial;
pub use gf::{
    asymptotic_estimate, chain_series, chain_walks, estimate_ratio, fuss_catalan, graphs_series, graphs_series_horner,
    kappa, kernel_series, kernel_series_horner, lagrange_compose, ln_asymptotic_estimate, ln_big, m_sequence,
    nonbipartite_series, profile, tree_series, AsymptoticProfile, ChainSeries,
};

/// Exact coefficient rings usable in [`Series`].
pub trait Coefficient:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + for<'a> Add<&'a Self, Output = Self>
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self> + Sub<&'a Self, Output = Self> + Add<&'a Self, Output = Self>,
{
    fn from_i64(x: i64) -> Self;
    /// `self / other` when the quotient lies in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }

    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (quot, rem) = self.div_rem(other);
        rem.is_zero().then_some(quot)
    }
}

impl Coefficient for BigRational {
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }

    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

/// `sum_i coeffs[i] x^(valuation + i)`, known for exponents below `order`.
#[derive(Clone, Debug)]
pub struct Series<T> {
    valuation: i64,
    coeffs: Vec<T>,
    order: i64,
}

impl<T: Coefficient> PartialEq for Series<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    /// Equal truncation orders and equal known coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && (self.valuation.min(other.valuation)..self.order).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl<T: Coefficient> Series<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    pub fn new(valuation: i64, mut coeffs: Vec<T>, order: i64) -> Self {
        let keep = (order - valuation).max(0) as usize;
        coeffs.truncate(keep);
        Series { valuation, coeffs, order }
    }

    /// A power series from its first coefficients; the order is their count.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let order = coeffs.len() as i64;
        Self::new(0, coeffs, order)
    }

    pub fn zero(order: i64) -> Self {
        Series { valuation: 0, coeffs: Vec::new(), order }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(T::one(), 0, order)
    }

    pub fn monomial(c: T, exponent: i64, order: i64) -> Self {
        Self::new(exponent, vec![c], order)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Smallest exponent carrying a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.valuation + i as i64)
    }

    pub fn coeff(&self, k: i64) -> T {
        assert!(k < self.order, "coefficient {k} beyond truncation order {}", self.order);
        if k < self.valuation {
            return T::zero();
        }
        self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficients of exponents `0..order`; panics on negative powers.
    pub fn coefficients(&self) -> Vec<T> {
        if let Some(v) = self.valuation() {
            assert!(v >= 0, "series has a negative power x^{v}");
        }
        (0..self.order).map(|k| self.coeff(k)).collect()
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.valuation, self.coeffs.clone(), order.min(self.order))
    }

    fn combine(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let order = self.order.min(other.order);
        let lo = self.valuation.min(other.valuation);
        let coeffs = (lo..order)
            .map(|k| {
                let a = if k < self.order { self.coeff(k) } else { T::zero() };
                let b = if k < other.order { other.coeff(k) } else { T::zero() };
                f(&a, &b)
            })
            .collect();
        Self::new(lo, coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.valuation, self.coeffs.iter().map(|c| -c.clone()).collect(), self.order)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.valuation, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.valuation + k, self.coeffs.clone(), self.order + k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let valuation = self.valuation + other.valuation;
        let order = (self.order + other.valuation).min(other.order + self.valuation);
        let len = (order - valuation).max(0) as usize;
        let mut coeffs = vec![T::zero(); len.min(self.coeffs.len() + other.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                coeffs[i + j] = coeffs[i + j].clone() + &(a * b);
            }
        }
        Self::new(valuation, coeffs, order)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(i64::MAX / 4);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if acc.order == i64::MAX / 4 {
            acc.order = self.order.max(0);
            acc.coeffs.truncate(acc.order as usize);
        }
        acc
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Series("reciprocal of a series with no known nonzero term".into()))?;
        let start = (v - self.valuation) as usize;
        let u = &self.coeffs[start..];
        let precision = (self.order - v) as usize;
        let lead_inv = T::one()
            .exact_div(&u[0])
            .ok_or_else(|| Error::Series("leading coefficient is not invertible".into()))?;
        let mut inv: Vec<T> = Vec::with_capacity(precision);
        inv.push(lead_inv.clone());
        for k in 1..precision {
            let mut acc = T::zero();
            for j in 1..=k.min(u.len() - 1) {
                acc = acc + &(&u[j] * &inv[k - j]);
            }
            inv.push(-(&acc * &lead_inv));
        }
        Ok(Self::new(-v, inv, -v + precision as i64))
    }

    /// `self(inner(x))` by Horner evaluation; `inner` must have no constant
    /// term and `self` no negative powers.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.valuation().is_some_and(|v| v < 1) {
            return Err(Error::Series("inner series must have zero constant term".into()));
        }
        if self.valuation().is_some_and(|v| v < 0) {
            return Err(Error::Series("outer series has negative powers".into()));
        }
        let order = self.order.min(inner.order);
        let top = order.max(0);
        let mut acc = Self::zero(order);
        for k in (0..top).rev() {
            acc = acc.mul(inner).truncate(order);
            acc = acc.add(&Self::monomial(self.coeff(k), 0, order));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Series<BigInt> {
        Series::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn geometric_reciprocal() {
        let s = ints(&[1, -1, 0, 0, 0, 0]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.coefficients(), ints(&[1, 1, 1, 1, 1, 1]).coefficients());
        assert_eq!(s.mul(&r), Series::one(6));
    }

    #[test]
    fn laurent_reciprocal() {
        // 1 / (x - x^2) = x^-1 (1 + x + x^2 + ...)
        let s = Series::new(0, vec![BigInt::zero(), BigInt::one(), -BigInt::one()], 6);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.valuation(), Some(-1));
        assert_eq!(r.coeff(-1), BigInt::one());
        assert_eq!(r.coeff(3), BigInt::one());
    }

    #[test]
    fn compose_and_pow() {
        // (1 + x)^2 at x -> x + x^2
        let outer = ints(&[1, 2, 1, 0, 0]);
        let inner = ints(&[0, 1, 1, 0, 0]);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c, inner.add(&Series::one(5)).pow(2));
        assert_eq!(c.coefficients(), ints(&[1, 2, 3, 2, 1]).coefficients());
    }

    #[test]
    fn rational_coefficients() {
        let half = BigRational::new(1.into(), 2.into());
        let s = Series::from_coeffs(vec![BigRational::from_i64(2), half.clone(), BigRational::zero()]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.coeff(0), half);
        assert!(s.mul(&r).sub(&Series::one(3)).valuation().is_none());
    }

    #[test]
    fn integer_reciprocal_requires_unit() {
        assert!(ints(&[2, 1]).reciprocal().is_err());
    }
}
