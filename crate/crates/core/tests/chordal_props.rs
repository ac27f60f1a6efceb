mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sfvs_core::chordal::{
    build_clique_tree, chordality_certificate, maximal_cliques, split_partition,
    split_violation,
};
use sfvs_core::gen::{generate, Family, GenSpec};

proptest! {
    #[test]
    fn recognition_matches_brute_force(seed in any::<u64>(), n in 1usize..10, p in 0.1f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, p);
        match chordality_certificate(&g) {
            Ok(_) => prop_assert!(!common::has_long_induced_cycle(&g)),
            Err(cyc) => prop_assert!(common::is_induced_long_cycle(&g, &cyc)),
        }
        let split = split_partition(&g);
        prop_assert_eq!(split.is_some(), common::is_split_brute(&g));
        prop_assert_eq!(split_violation(&g).is_none(), split.is_some());
        if let Some(sp) = split {
            prop_assert!(sp.is_valid_for(&g));
        }
    }

    #[test]
    fn cliques_and_tree_on_chordal_graphs(seed in 0u64..10_000, n in 2usize..14) {
        let mut spec = GenSpec::new(Family::ChordalRandom, seed);
        spec.n = n;
        let inst = generate(&spec).unwrap();
        let g = &inst.graph;
        let peo = chordality_certificate(g).unwrap();
        let got: BTreeSet<_> = maximal_cliques(g, &peo).unwrap().into_iter().collect();
        prop_assert_eq!(&got, &common::maximal_cliques_brute(g));
        for comp in g.components() {
            let sub = g.induced(&comp.into_iter().collect());
            let tree = build_clique_tree(&sub).unwrap();
            prop_assert!(tree.validate(&sub).is_ok());
            prop_assert_eq!(tree.edges.len() + 1, tree.nodes.len());
        }
    }
}
