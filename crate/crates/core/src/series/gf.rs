//! Tree, chain and kernel generating functions, the total counts
//! `g_{n,delta}`, and asymptotic constants.
//!
//! Throughout, `y = z T(z)^q` where `T = 1 + z T^q` is the tree series, so
//! that `T = 1 + y` and `y = z (1 + y)^q`. Kernel series are first built as
//! Laurent series in `y` and then composed with `y(z)` by Lagrange
//! inversion.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Series;
use crate::error::{Error, Result};
use crate::kernel::{profile_counts, ChainType, EdgeClass, EdgeStats};

/// Fuss-Catalan number `C(qn + 1, n) / (qn + 1)`: trees with `n` whites.
pub fn fuss_catalan(q: usize, n: usize) -> BigInt {
    binomial(q * n + 1, n) / BigInt::from(q * n + 1)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The tree series `T(z) = 1 + z T(z)^q` to order `n_max + 1`.
pub fn tree_series(q: usize, n_max: usize) -> Series<BigInt> {
    Series::from_coeffs((0..=n_max).map(|n| fuss_catalan(q, n)).collect())
}

/// Number of color sequences `c_0 = a, ..., c_k = b` with consecutive
/// colors distinct, among `q` colors; `equal` tells whether `a = b`.
pub fn chain_walks(q: usize, k: usize, equal: bool) -> BigInt {
    let big_q = BigInt::from(q);
    let p = num_traits::pow(BigInt::from(q - 1), k);
    let sign = if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    if equal {
        (p + BigInt::from(q - 1) * sign) / big_q
    } else {
        (p - sign) / big_q
    }
}

/// `1 / ((1 + y)(1 - (q - 1) y))` to order `order`.
fn d_series(q: usize, order: i64) -> Series<BigInt> {
    let q = q as i64;
    let denom = Series::new(0, vec![BigInt::one(), BigInt::from(2 - q), BigInt::from(1 - q)], order);
    denom.reciprocal().expect("unit constant term")
}

/// A chain generating function `z_white^w z_colored^c F(y)` with `y`
/// marking one white and one colored vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSeries {
    pub white_power: u32,
    pub colored_power: u32,
    pub series: Series<BigInt>,
}

impl ChainSeries {
    /// Count of chains with `whites` internal whites and `colored`
    /// internal colored vertices.
    pub fn count(&self, whites: u32, colored: u32) -> BigInt {
        if whites < self.white_power || colored < self.colored_power {
            return BigInt::zero();
        }
        let (a, b) = (whites - self.white_power, colored - self.colored_power);
        if a != b {
            return BigInt::zero();
        }
        self.series.coeff(a as i64)
    }
}

/// Generating function of core chains of a given type, to order `order`
/// in `y`. Internal vertices are counted by `z_white` and `z_colored`.
pub fn chain_series(t: ChainType, q: usize, order: usize) -> ChainSeries {
    let order = order as i64;
    let d = d_series(q, order);
    let qm1 = BigInt::from(q - 1);
    // (q - 1) y D and 1 + (q - 1) y^2 D
    let eq_cc = d.shift(1).scale(&qm1).truncate(order);
    let eq_end = Series::one(order).add(&d.shift(2).scale(&qm1).truncate(order));
    let (w, c, series) = match (t.class, t.equal) {
        (EdgeClass::ColoredColored, false) => (1, 0, d),
        (EdgeClass::ColoredColored, true) => (1, 0, eq_cc),
        (EdgeClass::ColoredWhite, false) => (1, 1, d),
        (EdgeClass::ColoredWhite, true) => (0, 0, eq_end),
        (EdgeClass::WhiteWhite, false) => (1, 2, d),
        (EdgeClass::WhiteWhite, true) => (0, 1, eq_end),
    };
    ChainSeries {
        white_power: w,
        colored_power: c,
        series,
    }
}

/// `[y^k] H(y)` for the kernel factor
/// `(q-1)^a y^(V + E + a - b) (1 - (q-2) y)^b D(y)^E`, as a Laurent series
/// in `y`, where `a` counts colored/colored unicolored edges and `b` the
/// other unicolored edges.
fn kernel_factor(stats: &EdgeStats, q: usize, d_pow: &Series<BigInt>, order: i64) -> Series<BigInt> {
    let a = stats.cc_equal;
    let b = stats.cw_equal + stats.ww_equal;
    let exponent = (stats.white_vertices + stats.edges + a) as i64 - b as i64;
    let binom = Series::new(0, vec![BigInt::one(), BigInt::from(2 - q as i64)], order).pow(b as u32);
    let scale = num_traits::pow(BigInt::from(q - 1), a);
    binom.mul(d_pow).scale(&scale).shift(exponent).truncate(order)
}

/// `[z^n] H(y(z))` for `n < order`, where `y = z (1 + y)^q` and `H` has no
/// terms below `y^1`.
pub fn lagrange_compose(h: &Series<BigInt>, q: usize, order: usize) -> Result<Series<BigInt>> {
    if h.valuation().is_some_and(|v| v < 1) {
        return Err(Error::Series("outer series must vanish at y = 0".into()));
    }
    if (h.order() as usize) < order {
        return Err(Error::Series("outer series truncated too early".into()));
    }
    let mut out = vec![BigInt::zero(); order];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        // C(qn, n - k) for k = n down to 1
        let m = q * n;
        let mut binom = BigInt::one();
        let mut acc = BigInt::zero();
        for j in 0..n {
            let k = n - j;
            let hk = h.coeff(k as i64);
            if !hk.is_zero() {
                acc += &hk * &binom * BigInt::from(k);
            }
            binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
        }
        let (quot, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(n));
        debug_assert!(rem.is_zero());
        *slot = quot;
    }
    Ok(Series::from_coeffs(out))
}

/// Series in `z` of constellations whose kernel has the given statistics;
/// coefficient `n` counts those with `n` whites.
pub fn kernel_series(stats: &EdgeStats, q: usize, order: usize) -> Result<Series<BigInt>> {
    if q < 3 {
        return Err(Error::UnsupportedQ { q, min: 3 });
    }
    let o = order as i64 + 1;
    let d_pow = d_series(q, o).pow(stats.edges as u32);
    lagrange_compose(&kernel_factor(stats, q, &d_pow, o), q, order)
}

/// Same as [`kernel_series`] but composing with `y(z) = T(z) - 1` by
/// Horner's rule.
pub fn kernel_series_horner(stats: &EdgeStats, q: usize, order: usize) -> Result<Series<BigInt>> {
    let o = order as i64;
    let d_pow = d_series(q, o).pow(stats.edges as u32);
    let h = kernel_factor(stats, q, &d_pow, o);
    let y = tree_series(q, order.saturating_sub(1)).sub(&Series::one(o));
    h.compose(&y)
}

/// `g_{n,delta}` for `n < order`: rooted bipartite graphs of order `delta`
/// with `2n` vertices.
pub fn graphs_series(q: usize, delta: usize, order: usize) -> Result<Series<BigInt>> {
    let profiles = profile_counts(q, delta)?;
    let o = order as i64 + 1;
    let d = d_series(q, o);
    let max_e = profiles.iter().map(|(s, _)| s.edges).max().unwrap_or(0);
    let mut d_pows = vec![Series::one(o)];
    for e in 1..=max_e {
        d_pows.push(d_pows[e - 1].mul(&d));
    }
    let mut total = Series::zero(o);
    for (stats, count) in profiles.iter() {
        let term = kernel_factor(stats, q, &d_pows[stats.edges], o).scale(&BigInt::from(*count));
        total = total.add(&term);
    }
    lagrange_compose(&total, q, order)
}

/// [`graphs_series`] summed kernel by kernel with Horner composition.
pub fn graphs_series_horner(q: usize, delta: usize, order: usize) -> Result<Series<BigInt>> {
    let mut total = Series::zero(order as i64);
    for (stats, count) in profile_counts(q, delta)?.iter() {
        total = total.add(&kernel_series_horner(stats, q, order)?.scale(&BigInt::from(*count)));
    }
    Ok(total)
}

/// Counts of rooted colored graphs, bipartite or not: `2^delta` times the
/// bipartite counts.
pub fn nonbipartite_series(q: usize, delta: usize, order: usize) -> Result<Series<BigInt>> {
    Ok(graphs_series(q, delta, order)?.scale(&(BigInt::one() << delta)))
}

/// `m_1, ..., m_{delta_max}`: rooted cubic maps with one leaf.
pub fn m_sequence(delta_max: usize) -> Vec<BigInt> {
    let mut m: Vec<BigInt> = Vec::with_capacity(delta_max);
    for d in 1..=delta_max {
        let v = match d {
            1 => BigInt::one(),
            2 => BigInt::from(5),
            _ => {
                let conv: BigInt = (1..d).map(|k| &m[k - 1] * &m[d - k - 1]).sum();
                BigInt::from(6 * d - 8) * &m[d - 2] + conv
            }
        };
        m.push(v);
    }
    m
}

/// `Gamma(k / 2)` for a positive integer `k`.
fn gamma_half(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        (1..k / 2).map(|i| i as f64).product()
    } else {
        let m = (k - 1) / 2;
        // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
        let mut v = PI.sqrt();
        for i in 0..m {
            v *= i as f64 + 0.5;
        }
        v
    }
}

/// Leading constant of `g_{n,delta} ~ kappa n^{3(delta-1)/2} z_c^{-n}`.
pub fn kappa(q: usize, delta: usize) -> f64 {
    let qf = q as f64;
    if delta == 0 {
        return (qf / (2.0 * PI * (qf - 1.0).powi(3))).sqrt();
    }
    let m = m_sequence(delta)[delta - 1].to_f64().unwrap();
    let half = (3 * delta - 1) as f64 / 2.0;
    2.0 / (qf * (qf - 1.0)) * ((qf - 1.0) / (2.0 * qf.powi(3))).powf(half) * (qf.powi(4) / 4.0).powi(delta as i32) * m
        / gamma_half(3 * delta - 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticProfile {
    pub q: usize,
    pub delta: usize,
    /// Radius of convergence `(q-1)^(q-1) / q^q`.
    pub z_c: BigRational,
    pub kappa: f64,
    pub exponent: f64,
    /// `1 / z_c`.
    pub growth: f64,
}

pub fn profile(q: usize, delta: usize) -> AsymptoticProfile {
    let z_c = BigRational::new(
        num_traits::pow(BigInt::from(q - 1), q - 1),
        num_traits::pow(BigInt::from(q), q),
    );
    let growth = (q as f64).powi(q as i32) / ((q - 1) as f64).powi(q as i32 - 1);
    AsymptoticProfile {
        q,
        delta,
        z_c,
        kappa: kappa(q, delta),
        exponent: 3.0 * (delta as f64 - 1.0) / 2.0,
        growth,
    }
}

/// Natural logarithm of the estimate, usable where the estimate overflows.
pub fn ln_asymptotic_estimate(q: usize, delta: usize, n: usize) -> f64 {
    let p = profile(q, delta);
    let nf = n as f64;
    p.kappa.ln() + p.exponent * nf.ln() + nf * p.growth.ln()
}

pub fn asymptotic_estimate(q: usize, delta: usize, n: usize) -> f64 {
    ln_asymptotic_estimate(q, delta, n).exp()
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "logarithm of a non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * LN_2
}

/// `g / estimate(n)` computed in log space.
pub fn estimate_ratio(g: &BigInt, q: usize, delta: usize, n: usize) -> f64 {
    (ln_big(g) - ln_asymptotic_estimate(q, delta, n)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(tree_series(3, 4).coefficients(), big(&[1, 1, 3, 12, 55]));
        assert_eq!(fuss_catalan(4, 2), BigInt::from(4));
        for q in 2..6 {
            assert_eq!(fuss_catalan(q, 1), BigInt::one());
        }
    }

    #[test]
    fn tree_series_fixed_point() {
        for q in [2, 3, 4] {
            let t = tree_series(q, 12);
            let rhs = Series::one(13).add(&t.pow(q as u32).shift(1).truncate(13));
            assert_eq!(t, rhs);
        }
    }

    #[test]
    fn walk_counts_match_d_series() {
        for q in [3, 4, 5] {
            let d = d_series(q, 10);
            for m in 0..10 {
                assert_eq!(d.coeff(m), chain_walks(q, m as usize + 1, false));
            }
            assert_eq!(chain_walks(q, 0, true), BigInt::one());
            assert_eq!(chain_walks(q, 0, false), BigInt::zero());
            assert_eq!(chain_walks(q, 1, true), BigInt::zero());
        }
    }

    #[test]
    fn chain_linear_system() {
        // F(neq) = z_w + (q-2) y F(neq) + y F(eq), F(eq) = (q-1) y F(neq)
        let q = 3;
        let neq = chain_series(ChainType::ALL[0], q, 12).series;
        let eq = chain_series(ChainType::ALL[1], q, 12).series;
        let rhs = Series::one(12)
            .add(&neq.shift(1).scale(&BigInt::from(q - 2)).truncate(12))
            .add(&eq.shift(1).truncate(12));
        assert_eq!(neq, rhs);
    }

    #[test]
    fn m_values() {
        assert_eq!(m_sequence(4), big(&[1, 5, 60, 1105]));
    }

    #[test]
    fn kappa_values() {
        assert!((kappa(3, 0) - (3.0 / (16.0 * PI)).sqrt()).abs() < 1e-15);
        assert!((kappa(3, 1) - 0.25).abs() < 1e-15);
        assert!((gamma_half(5) - 1.329_340_388_179_137).abs() < 1e-12);
    }

    #[test]
    fn delta_zero_series_is_fuss_catalan() {
        let g = graphs_series(3, 0, 8).unwrap();
        for n in 1..8 {
            assert_eq!(g.coeff(n as i64), fuss_catalan(3, n));
        }
        assert_eq!(g.coeff(0), BigInt::zero());
    }

    #[test]
    fn lagrange_matches_horner() {
        for delta in 0..=2 {
            let a = graphs_series(3, delta, 10).unwrap();
            let b = graphs_series_horner(3, delta, 10).unwrap();
            assert_eq!(a.coefficients(), b.coefficients());
        }
    }

    #[test]
    fn ln_big_is_accurate() {
        let x = num_traits::pow(BigInt::from(3), 2000);
        assert!((ln_big(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
