mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sfvs_core::gen::{generate, Family, GenSpec};
use sfvs_core::oracle::{
    brute_force_hitting_set, brute_force_vertex_cover, export_3hs, oracle_decide_with,
    vc_to_sfvs, OracleError, OracleMode,
};
use sfvs_core::{Graph, Instance};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_modes_agree_on_chordal(seed in 0u64..100_000, n in 2usize..16, k in 0i64..5) {
        let mut spec = GenSpec::new(Family::ChordalRandom, seed);
        spec.n = n;
        spec.k = k;
        let i = generate(&spec).unwrap();
        let fast = oracle_decide_with(&i, 24, OracleMode::Triangles).unwrap();
        let slow = oracle_decide_with(&i, 24, OracleMode::Cycles).unwrap();
        prop_assert_eq!(&fast, &slow);
        let hs = export_3hs(&i).unwrap();
        let best = brute_force_hitting_set(&hs);
        prop_assert_eq!(best.is_some(), fast.yes);
        if let (Some(a), Some(b)) = (best, fast.solution) {
            prop_assert_eq!(a.len(), b.len());
        }
    }

    #[test]
    fn cover_reduction_matches_cover_number(seed in any::<u64>(), n in 2usize..8, p in 0.2f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, p);
        let tau = common::vertex_cover_brute(&g);
        prop_assert_eq!(brute_force_vertex_cover(&g), tau);
        for k in [tau as i64 - 1, tau as i64] {
            let i = vc_to_sfvs(&g, k);
            let yes = oracle_decide_with(&i, 40, OracleMode::Auto).unwrap().yes;
            prop_assert_eq!(yes, k >= tau as i64);
        }
    }
}

#[test]
fn oversized_and_non_chordal_inputs_are_refused() {
    let big = Graph::with_vertices(1..=30);
    let i = Instance::new(big, [1].into(), 1).unwrap();
    assert!(matches!(oracle_decide_with(&i, 24, OracleMode::Auto), Err(OracleError::TooLarge { .. })));
    let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
    let i = Instance::new(c4, [1].into(), 0).unwrap();
    assert!(!oracle_decide_with(&i, 24, OracleMode::Cycles).unwrap().yes);
    // no triangles, so the triangle test alone misses the 4-cycle
    assert!(oracle_decide_with(&i, 24, OracleMode::Triangles).unwrap().yes);
    assert!(matches!(export_3hs(&i), Err(OracleError::NotChordal(_))));
}
