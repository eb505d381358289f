//! Brute-force class counts against the exact series.

use num_bigint::BigInt;
use sykcomb::oracle::{bipartite_classes, count_table, Family};
use sykcomb::series::{fuss_catalan, graphs_series, kernel_series, nonbipartite_series};
use sykcomb::kernel::{core, profile_counts};
use sykcomb::Constellation;

#[test]
fn bipartite_counts_match_series() {
    for n in 1..=4 {
        let table = count_table(3, n, Family::Bipartite).unwrap();
        assert_eq!(table.total(), table.burnside_total, "n = {n}");
        for delta in 0..=2 {
            let g = graphs_series(3, delta, n + 1).unwrap();
            assert_eq!(BigInt::from(table.row(delta).total), g.coeff(n as i64), "n = {n}, delta = {delta}");
        }
    }
}

#[test]
fn general_counts_are_scaled_bipartite_counts() {
    for n in 1..=3 {
        let table = count_table(3, n, Family::General).unwrap();
        assert_eq!(table.total(), table.burnside_total);
        for delta in 0..=1 {
            let g = nonbipartite_series(3, delta, n + 1).unwrap();
            assert_eq!(BigInt::from(table.row(delta).total), g.coeff(n as i64), "n = {n}, delta = {delta}");
        }
    }
}

#[test]
fn order_zero_counts_are_fuss_catalan() {
    for n in 1..=4 {
        let table = count_table(3, n, Family::Bipartite).unwrap();
        assert_eq!(BigInt::from(table.row(0).total), fuss_catalan(3, n));
        // every order-0 graph is melonic and SYK
        assert_eq!(table.row(0).melonic, table.row(0).total);
        assert_eq!(table.row(0).syk, table.row(0).total);
    }
}

#[test]
fn per_profile_counts_match_kernel_series() {
    // classify oracle classes by the edge statistics of their kernel
    let q = 3;
    for n in 2..=4 {
        let mut by_profile = std::collections::HashMap::new();
        for g in bipartite_classes(q, n).unwrap() {
            let s = Constellation::psi(&g).unwrap();
            if s.excess() == 0 || s.excess() > 2 {
                continue;
            }
            let (c, _) = core(&s);
            *by_profile.entry((s.excess(), c.kernel().edge_stats())).or_insert(0u64) += 1;
        }
        for delta in 1..=2 {
            for (stats, mult) in profile_counts(q, delta).unwrap().iter() {
                let expect = kernel_series(stats, q, n + 1).unwrap().coeff(n as i64) * BigInt::from(*mult);
                let got = by_profile.get(&(delta, *stats)).copied().unwrap_or(0);
                assert_eq!(BigInt::from(got), expect, "n = {n}, profile {stats:?}");
            }
        }
    }
}
