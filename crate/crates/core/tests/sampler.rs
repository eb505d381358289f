//! Exactness and structural behaviour of the sampler.

use std::collections::HashMap;

use num_bigint::BigInt;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use sykcomb::constellation::psi_hat_inverse_signed;
use sykcomb::oracle::{bipartite_classes, general_classes, Family};
use sykcomb::sampler::{
    build_tables, delete_white, handle_vertices, random_signs, sample_constellation, sample_graph, survey, trial_rng,
    white_chain_vertices,
};
use sykcomb::series::graphs_series;
use sykcomb::{ColoredGraph, Constellation, SignedConstellation};

/// Upper tail of the chi-square statistic of `draws` against equal cells.
fn uniform_p_value(counts: &[u64], draws: u64) -> f64 {
    let k = counts.len() as f64;
    let expect = draws as f64 / k;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
    1.0 - ChiSquared::new(k - 1.0).unwrap().cdf(stat)
}

fn class_index(classes: Vec<ColoredGraph>, delta: usize) -> HashMap<ColoredGraph, usize> {
    classes
        .into_iter()
        .filter(|g| g.order() == delta)
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect()
}

#[test]
fn table_totals_match_oracle_counts() {
    for delta in 0..=2 {
        for n in 1..=4 {
            let t = build_tables(3, delta, n).unwrap();
            let oracle = bipartite_classes(3, n).unwrap().iter().filter(|g| g.order() == delta).count();
            assert_eq!(BigInt::from(t.total().clone()), BigInt::from(oracle));
        }
    }
    let t = build_tables(3, 2, 200).unwrap();
    assert_eq!(BigInt::from(t.total().clone()), graphs_series(3, 2, 201).unwrap().coeff(200));
}

#[test]
fn bipartite_samples_are_uniform() {
    let (delta, n) = (1, 3);
    let index = class_index(bipartite_classes(3, n).unwrap(), delta);
    let tables = build_tables(3, delta, n).unwrap();
    let draws = 30_000;
    let mut counts = vec![0u64; index.len()];
    for t in 0..draws {
        let g = sample_graph(&tables, &mut trial_rng(11, t), Family::Bipartite).unwrap();
        counts[index[&g]] += 1;
    }
    let p = uniform_p_value(&counts, draws);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn general_samples_are_uniform() {
    let (delta, n) = (1, 2);
    let index = class_index(general_classes(3, n).unwrap(), delta);
    assert_eq!(index.len(), 6);
    let tables = build_tables(3, delta, n).unwrap();
    let draws = 12_000;
    let mut counts = vec![0u64; index.len()];
    for t in 0..draws {
        let g = sample_graph(&tables, &mut trial_rng(5, t), Family::General).unwrap();
        counts[index[&g]] += 1;
    }
    let p = uniform_p_value(&counts, draws);
    assert!(p > 1e-3, "p = {p}");
}

/// Whether the sub-constellation of colors `i` and `j` is a forest.
fn bicolored_forest(s: &Constellation, i: usize, j: usize) -> bool {
    let n = s.num_white();
    let cycles = s.colored_cycles();
    let mut parent: Vec<usize> = (0..n + cycles.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (k, (c, whites)) in cycles.iter().enumerate() {
        if *c != i && *c != j {
            continue;
        }
        for &w in whites {
            let (a, b) = (find(&mut parent, n + k), find(&mut parent, w as usize));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

#[test]
fn forest_criterion_implies_handle_vertex() {
    for delta in 1..=2 {
        let tables = build_tables(3, delta, 40).unwrap();
        for t in 0..200 {
            let mut rng = trial_rng(3, t);
            let s = sample_constellation(&tables, &mut rng).unwrap();
            let signed = random_signs(s.clone(), &mut rng);
            for bare in [SignedConstellation::all_positive(s.clone()), signed] {
                let handles = handle_vertices(&bare);
                for (v, i, j) in white_chain_vertices(&bare.base) {
                    if bicolored_forest(&bare.base, i, j) {
                        assert!(handles.contains(&v));
                    }
                }
            }
        }
    }
}

#[test]
fn deleting_a_handle_vertex_lowers_order() {
    let tables = build_tables(3, 2, 60).unwrap();
    let mut checked = 0;
    for t in 0..100 {
        let mut rng = trial_rng(9, t);
        let s = random_signs(sample_constellation(&tables, &mut rng).unwrap(), &mut rng);
        for v in handle_vertices(&s) {
            let reduced = delete_white(&s, v).unwrap();
            // A chain on a bridge of the core takes the far side with it.
            let excess = reduced.base.excess();
            assert!(excess < 2);
            assert_eq!(psi_hat_inverse_signed(&reduced).graph.order(), excess);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn survey_is_thread_count_independent() {
    let tables = build_tables(3, 2, 30).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| survey(&tables, Family::General, 300, 42, true).unwrap())
    };
    let a = serde_json::to_string(&run(1)).unwrap();
    let b = serde_json::to_string(&run(3)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn trees_are_always_syk() {
    let tables = build_tables(3, 0, 25).unwrap();
    let r = survey(&tables, Family::General, 500, 1, true).unwrap();
    assert_eq!(r.syk, 500);
    assert_eq!(r.bipartite_and_syk, 500);
    assert_eq!(r.fraction_all_certificates, Some(1.0));
}

#[test]
fn samples_satisfy_constructor_invariants() {
    for delta in 0..=3 {
        let tables = build_tables(3, delta, 12).unwrap();
        for t in 0..20 {
            for family in [Family::Bipartite, Family::General] {
                let g = sample_graph(&tables, &mut trial_rng(2, t), family).unwrap();
                assert!(g.validate().is_ok());
                assert_eq!(g.order(), delta);
                if family == Family::Bipartite {
                    assert!(g.is_bipartite());
                }
            }
        }
    }
}
