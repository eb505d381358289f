//! Generating-function identities checked against direct constructions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sykcomb::kernel::{dominant_weighted_sum, enumerate_kernels, kernel_count, ChainType, EdgeClass};
use sykcomb::series::{
    chain_series, chain_walks, fuss_catalan, graphs_series, graphs_series_horner, kernel_series, kernel_series_horner,
    m_sequence, tree_series,
};
use sykcomb::Series;

/// Walks by direct enumeration of color sequences.
fn brute_walks(q: usize, k: usize, a: usize, b: usize) -> u64 {
    fn go(q: usize, left: usize, cur: usize, b: usize) -> u64 {
        if left == 0 {
            return (cur == b) as u64;
        }
        (1..=q).filter(|&c| c != cur).map(|c| go(q, left - 1, c, b)).sum()
    }
    go(q, k, a, b)
}

#[test]
fn walk_formula_matches_enumeration() {
    for q in 3..=5 {
        for k in 0..8 {
            assert_eq!(chain_walks(q, k, true), BigInt::from(brute_walks(q, k, 1, 1)));
            assert_eq!(chain_walks(q, k, false), BigInt::from(brute_walks(q, k, 1, 2)));
        }
    }
}

#[test]
fn chain_series_count_internal_vertices() {
    // a chain of type t with k internal whites has a fixed number of
    // internal colored vertices; its count is the number of color walks
    let q = 4;
    for t in ChainType::ALL {
        let cs = chain_series(t, q, 10);
        for k in 0..8u32 {
            let colored = match t.class {
                EdgeClass::ColoredColored => k.checked_sub(1),
                EdgeClass::ColoredWhite => Some(k),
                EdgeClass::WhiteWhite => Some(k + 1),
            };
            let Some(colored) = colored else { continue };
            let expect = if t.class == EdgeClass::ColoredColored && k == 0 {
                BigInt::zero()
            } else {
                chain_walks(q, k as usize, t.equal)
            };
            assert_eq!(cs.count(k, colored), expect, "{t:?} k = {k}");
        }
    }
}

#[test]
fn fuss_catalan_first_values() {
    let expect = [1, 3, 12, 55];
    for (n, e) in (1..=4).zip(expect) {
        assert_eq!(fuss_catalan(3, n), BigInt::from(e));
        assert_eq!(graphs_series(3, 0, 5).unwrap().coeff(n as i64), BigInt::from(e));
    }
}

#[test]
fn m_sequence_values() {
    let m = m_sequence(4);
    assert_eq!(m, [1, 5, 60, 1105].map(BigInt::from).to_vec());
}

#[test]
fn dominant_sum_closed_form() {
    for q in 3..=5usize {
        for delta in 1..=2usize {
            let m = BigRational::from_integer(m_sequence(delta)[delta - 1].clone());
            let qr = BigRational::from_integer(BigInt::from(q));
            let base = qr.clone() * qr.clone() / BigRational::from_integer(2.into());
            let expect = qr.clone() / (qr - BigRational::one()) * m * num_traits::pow(base, 2 * delta - 1);
            assert_eq!(dominant_weighted_sum(q, delta).unwrap(), expect, "q = {q}, delta = {delta}");
        }
    }
}

#[test]
fn lagrange_and_horner_agree_per_kernel() {
    for k in enumerate_kernels(3, 1).unwrap() {
        let s = k.edge_stats();
        let a = kernel_series(&s, 3, 12).unwrap();
        let b = kernel_series_horner(&s, 3, 12).unwrap();
        assert_eq!(a.coefficients(), b.coefficients());
    }
    for delta in 0..=2 {
        assert_eq!(
            graphs_series(4, delta, 10).unwrap().coefficients(),
            graphs_series_horner(4, delta, 10).unwrap().coefficients()
        );
    }
}

#[test]
fn kernel_counts_are_stable() {
    assert_eq!(kernel_count(3, 0).unwrap(), 1);
    assert_eq!(enumerate_kernels(3, 1).unwrap().len() as u64, kernel_count(3, 1).unwrap());
}

proptest! {
    #[test]
    fn tree_series_solves_its_equation(q in 2usize..6, order in 2i64..14) {
        let t = tree_series(q, order as usize - 1);
        let rhs = Series::one(order).add(&t.pow(q as u32).shift(1).truncate(order));
        prop_assert_eq!(t, rhs);
    }

    #[test]
    fn reciprocal_is_inverse(c in proptest::collection::vec(-5i64..5, 1..10)) {
        let mut coeffs: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
        coeffs[0] = BigInt::one();
        let s = Series::from_coeffs(coeffs);
        let order = s.order();
        let r = s.reciprocal().unwrap();
        prop_assert_eq!(s.mul(&r), Series::one(order));
    }
}
