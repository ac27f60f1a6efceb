mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sfvs_core::gen::{generate, Family, GenSpec};
use sfvs_core::graph::is_solution;
use sfvs_core::oracle::oracle_decide;
use sfvs_core::solve::{
    plan_branch, reduce_fixpoint, select_mega_context, solve, Answer, BranchPlan, MegaSelection,
    Reduction, SolveError,
};
use sfvs_core::trace::{Rule, RuleTrace};
use sfvs_core::{Graph, Instance};

fn inst(edges: &[(usize, usize)], t: &[usize], k: i64) -> Instance {
    Instance::new(Graph::from_edges(edges.iter().copied()).unwrap(), t.iter().copied().collect(), k)
        .unwrap()
}

fn complete(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect()
}

#[test]
fn clique_with_all_terminals_needs_all_but_two() {
    let e = complete(5);
    let t = [1, 2, 3, 4, 5];
    assert_eq!(solve(&inst(&e, &t, 2)).unwrap().answer, Answer::No);
    let r = solve(&inst(&e, &t, 3)).unwrap();
    assert_eq!(r.answer, Answer::Yes);
    assert_eq!(r.solution.unwrap().len(), 3);
}

#[test]
fn triangles_sharing_a_terminal() {
    // a bowtie: one deletion at the shared terminal suffices
    let i = inst(&[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)], &[1], 1);
    let r = solve(&i).unwrap();
    assert_eq!(r.answer, Answer::Yes);
    assert_eq!(r.solution, Some(BTreeSet::from([1])));
}

#[test]
fn cycle_input_is_rejected_with_certificate() {
    let i = inst(&[(1, 2), (2, 3), (3, 4), (4, 1)], &[1], 1);
    match solve(&i) {
        Err(SolveError::NotChordal(c)) => assert!(common::is_induced_long_cycle(&i.graph, &c)),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn leaf_cluster_branching_is_safe() {
    let mut seen = 0;
    for seed in 0..200 {
        let mut spec = GenSpec::new(Family::LeafCluster, seed);
        spec.k = 4;
        let mut i = generate(&spec).unwrap();
        if reduce_fixpoint(&mut i, &mut RuleTrace::default()).unwrap() != Reduction::Reduced {
            continue;
        }
        let BranchPlan::Branch { rule: Rule::BranchLeafCluster, children } = plan_branch(&i).unwrap() else {
            continue;
        };
        let Ok(MegaSelection::Mega(ctx)) = select_mega_context(&i) else {
            panic!("seed {seed}: leaf-cluster rule fired without a context");
        };
        assert_eq!(ctx.children(), children);
        let any_child = children.iter().any(|c| {
            assert!(!c.picked.is_empty());
            oracle_decide(&c.apply(&i).unwrap()).unwrap().yes
        });
        assert_eq!(oracle_decide(&i).unwrap().yes, any_child, "seed {seed}");
        seen += 1;
    }
    assert!(seen >= 10, "only {seen} leaf-cluster branchings");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_agrees_with_oracle(seed in 0u64..100_000, n in 3usize..16, k in 0i64..5, fam in 0usize..3) {
        let family = [Family::ChordalRandom, Family::Planted, Family::SplitRandom][fam];
        let mut spec = GenSpec::new(family, seed);
        spec.n = n;
        spec.k = k.min(n as i64);
        spec.clique_size = (n / 2).max(1);
        let i = generate(&spec).unwrap();
        let r = solve(&i).unwrap();
        let want = oracle_decide(&i).unwrap().yes;
        prop_assert_eq!(r.answer == Answer::Yes, want);
        prop_assert!(r.nodes_visited <= 1u64 << (i.k.max(0) + 2));
        if let Some(s) = r.solution {
            prop_assert!(s.len() as i64 <= i.k);
            prop_assert!(is_solution(&i, &s).unwrap());
            prop_assert!(!common::terminal_on_cycle(&i, &s));
        }
    }
}
