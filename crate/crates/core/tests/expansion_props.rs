mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfvs_core::expansion::{
    find_expansion, find_matching_expansion_with_witness, maximum_matching, BipartiteView,
};

fn random_view(seed: u64, np: usize, nq: usize, p: f64) -> BipartiteView {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side_p: BTreeSet<usize> = (1..=np).collect();
    let side_q: BTreeSet<usize> = (np + 1..=np + nq).collect();
    let mut edges = BTreeSet::new();
    for &q in &side_q {
        // every Q vertex gets at least one neighbour
        edges.insert((rng.gen_range(1..=np), q));
        for &pv in &side_p {
            if rng.gen_bool(p) {
                edges.insert((pv, q));
            }
        }
    }
    BipartiteView::new(side_p, side_q, edges).unwrap()
}

proptest! {
    #[test]
    fn matching_is_maximum(seed in any::<u64>(), np in 1usize..7, nq in 1usize..9, p in 0.0f64..0.6) {
        let b = random_view(seed, np, nq, p);
        let m = maximum_matching(&b);
        let ps: Vec<usize> = b.side_p.iter().copied().collect();
        prop_assert_eq!(m.len(), common::matching_size(&ps, &b.edges));
        let left: BTreeSet<_> = m.iter().map(|e| e.0).collect();
        let right: BTreeSet<_> = m.iter().map(|e| e.1).collect();
        prop_assert_eq!(left.len(), m.len());
        prop_assert_eq!(right.len(), m.len());
    }

    #[test]
    fn expansions_exist_when_q_is_large(seed in any::<u64>(), np in 1usize..5, t in 1usize..3, p in 0.0f64..0.5) {
        let b = random_view(seed, np, np * t + 1 + (seed % 3) as usize, p);
        let e = find_expansion(&b, t).unwrap();
        prop_assert!(e.check(&b, t).is_ok());
        let w = find_matching_expansion_with_witness(&b, t).unwrap();
        prop_assert!(w.check(&b, t).is_ok());
        prop_assert!(w.unsaturated_witness.is_some());
    }
}
