//! Cores, chains and kernels of random constellations.

use proptest::prelude::*;
use sykcomb::kernel::{core, enumerate_kernels, reconstruct, EdgeStats, KernelDiagram};
use sykcomb::Constellation;

fn constellation() -> impl Strategy<Value = Constellation> {
    (3usize..5, 1usize..9)
        .prop_flat_map(|(q, n)| {
            let perm = Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle();
            (Just(q), proptest::collection::vec(perm, q))
        })
        .prop_filter_map("connected", |(q, perms)| Constellation::from_permutations(q, perms, 0).ok())
}

#[test]
fn catalog_contains_no_duplicates() {
    for delta in 0..=2 {
        let ks = enumerate_kernels(3, delta).unwrap();
        let codes: std::collections::HashSet<Vec<u16>> = ks.iter().map(KernelDiagram::canonical_code).collect();
        assert_eq!(codes.len(), ks.len());
    }
}

proptest! {
    #[test]
    fn pruning_round_trips(s in constellation()) {
        let (c, steps) = core(&s);
        prop_assert_eq!(c.excess(), s.excess());
        prop_assert_eq!(reconstruct(&c, &steps).unwrap(), s);
    }

    #[test]
    fn kernel_matches_chains(s in constellation()) {
        let (c, _) = core(&s);
        let k = c.kernel();
        prop_assert!(k.validate().is_ok());
        prop_assert_eq!(k.excess(), s.excess());
        let chains = c.chains();
        prop_assert_eq!(chains.len(), k.num_edges());
        let stats = k.edge_stats();
        let mut tally = EdgeStats {
            white_vertices: stats.white_vertices,
            colored_vertices: stats.colored_vertices,
            edges: stats.edges,
            ..EdgeStats::default()
        };
        for ch in &chains {
            let t = c.chain_type(ch);
            match (t.class, t.equal) {
                (sykcomb::kernel::EdgeClass::ColoredColored, true) => tally.cc_equal += 1,
                (sykcomb::kernel::EdgeClass::ColoredColored, false) => tally.cc_unequal += 1,
                (sykcomb::kernel::EdgeClass::ColoredWhite, true) => tally.cw_equal += 1,
                (sykcomb::kernel::EdgeClass::ColoredWhite, false) => tally.cw_unequal += 1,
                (sykcomb::kernel::EdgeClass::WhiteWhite, true) => tally.ww_equal += 1,
                (sykcomb::kernel::EdgeClass::WhiteWhite, false) => tally.ww_unequal += 1,
            }
        }
        prop_assert_eq!(tally, stats);
    }

    #[test]
    fn kernel_is_relabeling_invariant(s in constellation()) {
        let a = core(&s).0.kernel();
        let b = core(&s.canonical()).0.kernel();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(KernelDiagram::from_code(s.q(), &a.canonical_code()).unwrap(), a);
    }

    #[test]
    fn small_excess_kernels_are_in_the_catalog(s in constellation()) {
        prop_assume!(s.excess() <= 2);
        let k = core(&s).0.kernel();
        let catalog = enumerate_kernels(s.q(), s.excess()).unwrap();
        prop_assert!(catalog.contains(&k));
    }
}
