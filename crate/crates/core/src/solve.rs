//! Bounded search tree for subset-FVS on chordal graphs.
//!
//! Every search node first runs the reductions to a fixpoint, then applies
//! the lowest-priority branching rule that matches anywhere in the graph.
//! Components are scanned by smallest vertex and vertices in increasing
//! order, so the search is fully deterministic. Picked vertices are carried
//! down the tree and the final set is re-verified against the untouched
//! input before it is reported.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chordal::{build_clique_tree, chordality_certificate, chordality_order, maximal_cliques, CliqueTree};
use crate::graph::{find_bridges, find_t_triangle, is_t_forest, GraphError, Instance, Vertex};
use crate::oracle::minimum_triangle_hitting_set;
use crate::trace::{Rule, RuleTrace, TraceStep};

/// Components whose clique tree has at most this many nodes are solved by
/// enumeration rather than by the leaf-cluster rule.
const SMALL_TREE_NODES: usize = 2;
/// Largest subset size tried on a small component.
const SMALL_SUBSET_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not chordal; induced cycle {0:?}")]
    NotChordal(Vec<Vertex>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("solver invariant broken: {0}")]
    Fault(String),
}

fn fault<T>(m: impl Into<String>) -> Result<T, SolveError> {
    Err(SolveError::Fault(m.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub answer: Answer,
    /// Present exactly when the answer is YES.
    pub solution: Option<BTreeSet<Vertex>>,
    pub nodes_visited: u64,
    pub max_depth: usize,
    /// Steps along the successful root-to-leaf path, or the root's
    /// reductions when the answer is NO.
    pub trace: RuleTrace,
}

/// Outcome of running the reductions to a fixpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Yes,
    No,
    Reduced,
}

fn record(trace: &mut RuleTrace, rule: Rule, deleted: &BTreeSet<Vertex>, picked: &BTreeSet<Vertex>) {
    let mut step = TraceStep::new(rule);
    step.deleted_vertices = deleted.iter().copied().collect();
    step.picked = picked.iter().copied().collect();
    step.delta_k = -(picked.len() as i64);
    trace.push(step);
}

/// Applies the reductions until none matches or the instance is decided.
/// Picked vertices are recorded in `trace`.
pub fn reduce_fixpoint(inst: &mut Instance, trace: &mut RuleTrace) -> Result<Reduction, SolveError> {
    loop {
        if inst.k < 0 {
            trace.push(TraceStep::new(Rule::SolveNo));
            return Ok(Reduction::No);
        }
        let has_tri = find_t_triangle(inst).is_some();
        if inst.k <= 0 && has_tri {
            trace.push(TraceStep::new(Rule::SolveNo));
            return Ok(Reduction::No);
        }
        if !has_tri {
            trace.push(TraceStep::new(Rule::SolveYes));
            return Ok(Reduction::Yes);
        }

        if let Some(comp) = inst.graph.components().into_iter().find(|c| inst.graph.is_clique(c)) {
            let q: BTreeSet<Vertex> = comp.into_iter().collect();
            let terms: BTreeSet<Vertex> = q.intersection(&inst.terminals).copied().collect();
            let nonterms = q.len() - terms.len();
            let picked: BTreeSet<Vertex> = if q.len() <= 2 || terms.is_empty() {
                BTreeSet::new()
            } else if nonterms <= 2 {
                q.iter().copied().take(q.len() - 2).collect()
            } else {
                terms
            };
            inst.remove_vertices(&q)?;
            inst.k -= picked.len() as i64;
            record(trace, Rule::SolveCliqueComponent, &q, &picked);
            continue;
        }

        let lonely: BTreeSet<Vertex> = inst
            .graph
            .vertices()
            .filter(|&v| !inst.is_terminal(v) && inst.terminal_neighbors(v).next().is_none())
            .collect();
        if !lonely.is_empty() {
            inst.remove_vertices(&lonely)?;
            record(trace, Rule::SolveNoTerminalNeighbour, &lonely, &BTreeSet::new());
            continue;
        }

        let bridges = find_bridges(&inst.graph);
        if !bridges.is_empty() {
            for &(u, v) in &bridges {
                inst.graph.remove_edge(u, v)?;
            }
            let mut step = TraceStep::new(Rule::SolveBridge);
            step.deleted_edges = bridges.into_iter().collect();
            trace.push(step);
            continue;
        }
        return Ok(Reduction::Reduced);
    }
}

/// One child of a branching step: delete `deleted`, put `picked` into the
/// solution and lower the budget by `|picked|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Child {
    pub deleted: BTreeSet<Vertex>,
    pub picked: BTreeSet<Vertex>,
}

impl Child {
    fn pick(vs: &[Vertex]) -> Self {
        let s: BTreeSet<Vertex> = vs.iter().copied().collect();
        Child { deleted: s.clone(), picked: s }
    }

    fn drop_and_pick(drop: &[Vertex], pick: &[Vertex]) -> Self {
        let picked: BTreeSet<Vertex> = pick.iter().copied().collect();
        let mut deleted: BTreeSet<Vertex> = drop.iter().copied().collect();
        deleted.extend(&picked);
        Child { deleted, picked }
    }

    /// The child instance of `inst`.
    pub fn apply(&self, inst: &Instance) -> Result<Instance, GraphError> {
        inst.minus(&self.deleted, self.picked.len() as i64)
    }
}

/// Vertices of the leaf-cluster configuration: a deepest leaf clique
/// `{t, x, y, z}`, its parent, and two sibling leaves `{t_x, x, x1, x2}` and
/// `{t_y, y, y1, y2}`. When the siblings share a vertex it is stored as both
/// `x1` and `y1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MegaBranchContext {
    pub c_ell: BTreeSet<Vertex>,
    pub c_p: BTreeSet<Vertex>,
    pub c_x: BTreeSet<Vertex>,
    pub c_y: BTreeSet<Vertex>,
    pub t: Vertex,
    pub x: Vertex,
    pub y: Vertex,
    pub z: Vertex,
    pub t_x: Vertex,
    pub x1: Vertex,
    pub x2: Vertex,
    pub t_y: Vertex,
    pub y1: Vertex,
    pub y2: Vertex,
    pub shared: Option<Vertex>,
}

impl MegaBranchContext {
    /// The seven children, in table order.
    pub fn children(&self) -> Vec<Child> {
        let (t, x, y, z) = (self.t, self.x, self.y, self.z);
        let (tx, x1, x2, ty, y1, y2) = (self.t_x, self.x1, self.x2, self.t_y, self.y1, self.y2);
        vec![
            Child::pick(&[t, tx, ty]),
            Child::pick(&[t, tx, y1, y2]),
            Child::pick(&[t, x1, x2, ty]),
            // with a shared vertex the set collapses to four elements
            Child::pick(&[t, x1, x2, y1, y2]),
            Child::pick(&[x]),
            Child::pick(&[y, z, tx]),
            Child::pick(&[y, z, x1, x2]),
        ]
    }
}

/// What to do at a reduced search node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchPlan {
    /// Branch with the given rule.
    Branch { rule: Rule, children: Vec<Child> },
    /// Solve this component exhaustively.
    Small(Vec<Vertex>),
}

/// Outcome of the leaf-cluster selection on the first component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MegaSelection {
    Small(Vec<Vertex>),
    Mega(MegaBranchContext),
}

fn simplicial_of_degree<'a>(inst: &'a Instance, d: usize) -> impl Iterator<Item = Vertex> + 'a {
    inst.graph
        .vertices()
        .filter(move |&v| inst.graph.degree(v) == d && inst.graph.is_simplicial(v))
}

fn ordered_vertices(inst: &Instance) -> Vec<Vertex> {
    inst.graph.components().into_iter().flatten().collect()
}

fn rule_single_terminal_neighbour(inst: &Instance) -> Option<Vec<Child>> {
    for v in ordered_vertices(inst) {
        if inst.is_terminal(v) {
            continue;
        }
        let mut tn = inst.terminal_neighbors(v);
        let (Some(t), None) = (tn.next(), tn.next()) else { continue };
        let nt = inst.graph.neighbors(t);
        if let Some(&x) = inst.graph.neighbors(v).iter().find(|u| nt.contains(u)) {
            return Some(vec![Child::pick(&[t]), Child::pick(&[x])]);
        }
    }
    None
}

fn rule_simplicial_triangle(inst: &Instance) -> Option<Vec<Child>> {
    let order = ordered_vertices(inst);
    let v = order
        .into_iter()
        .find(|&v| inst.graph.degree(v) == 2 && inst.graph.is_simplicial(v))?;
    let ns: Vec<Vertex> = inst.graph.neighbors(v).iter().copied().collect();
    let (a, b) = (ns[0], ns[1]);
    Some(vec![Child::drop_and_pick(&[v], &[a]), Child::drop_and_pick(&[v], &[b])])
}

fn rule_large_clique(inst: &Instance) -> Result<Option<Vec<Child>>, SolveError> {
    let peo = chordality_order(&inst.graph).ok_or_else(|| SolveError::Fault("lost chordality".into()))?;
    let mut cliques = maximal_cliques(&inst.graph, &peo).map_err(|e| SolveError::Fault(e.to_string()))?;
    cliques.sort();
    for q in cliques {
        if q.len() < 5 {
            continue;
        }
        let Some(&t) = q.iter().find(|v| inst.is_terminal(**v)) else { continue };
        let rest: Vec<Vertex> = q.iter().copied().filter(|&v| v != t).take(4).collect();
        return Ok(Some(vec![
            Child::pick(&[t]),
            Child::pick(&[rest[0], rest[1]]),
            Child::pick(&[rest[2], rest[3]]),
        ]));
    }
    Ok(None)
}

fn rule_nonterminal_simplicial(inst: &Instance) -> Option<Vec<Child>> {
    for v in simplicial_of_degree(inst, 3) {
        if inst.is_terminal(v) {
            continue;
        }
        let ns: Vec<Vertex> = inst.graph.neighbors(v).iter().copied().collect();
        let Some(&t) = ns.iter().find(|u| inst.is_terminal(**u)) else { continue };
        let others: Vec<Vertex> = ns.into_iter().filter(|&u| u != t).collect();
        return Some(vec![
            Child::pick(&[t]),
            Child::drop_and_pick(&[v], &[others[0], others[1]]),
        ]);
    }
    None
}

fn rule_two_terminal_leaf(inst: &Instance) -> Option<Vec<Child>> {
    for t in simplicial_of_degree(inst, 3) {
        if !inst.is_terminal(t) {
            continue;
        }
        let ns: Vec<Vertex> = inst.graph.neighbors(t).iter().copied().collect();
        let Some(&x) = ns.iter().find(|u| inst.is_terminal(**u)) else { continue };
        let yz: Vec<Vertex> = ns.into_iter().filter(|&u| u != x).collect();
        let (y, z) = (yz[0], yz[1]);
        return Some(vec![Child::pick(&[x, y]), Child::pick(&[y, z]), Child::pick(&[x, z])]);
    }
    None
}

fn rule_shared_terminal(inst: &Instance) -> Option<Vec<Child>> {
    for t in simplicial_of_degree(inst, 3) {
        if !inst.is_terminal(t) {
            continue;
        }
        let ns: Vec<Vertex> = inst.graph.neighbors(t).iter().copied().collect();
        for (x, y, z) in [(ns[0], ns[1], ns[2]), (ns[0], ns[2], ns[1]), (ns[1], ns[2], ns[0])] {
            let ny = inst.graph.neighbors(y);
            let other = inst
                .graph
                .neighbors(x)
                .iter()
                .copied()
                .find(|&u| u != t && inst.is_terminal(u) && ny.contains(&u));
            if let Some(t2) = other {
                return Some(vec![
                    Child::pick(&[x, y]),
                    Child::pick(&[y, z]),
                    Child::pick(&[x, z]),
                    Child::pick(&[t, t2]),
                ]);
            }
        }
    }
    None
}

fn only_terminal(inst: &Instance, c: &BTreeSet<Vertex>) -> Result<Vertex, SolveError> {
    let ts: Vec<Vertex> = c.iter().copied().filter(|v| inst.is_terminal(*v)).collect();
    match ts.as_slice() {
        [t] => Ok(*t),
        _ => fault(format!("leaf clique {c:?} has {} terminals", ts.len())),
    }
}

/// Locates the leaf-cluster configuration in a component whose clique
/// tree has at least three nodes.
fn mega_context(inst: &Instance, tree: &CliqueTree) -> Result<MegaBranchContext, SolveError> {
    let adj = tree.adjacency();
    let n = tree.nodes.len();
    let root = (0..n)
        .find(|&i| adj[i].len() > 1)
        .ok_or_else(|| SolveError::Fault("clique tree has no internal node".into()))?;
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    parent[root] = root;
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                depth[w] = depth[u] + 1;
                order.push(w);
            }
        }
    }
    let is_leaf = |i: usize| i != root && adj[i].len() == 1;
    let ell = (0..n)
        .filter(|&i| is_leaf(i))
        .max_by(|&a, &b| depth[a].cmp(&depth[b]).then(b.cmp(&a)))
        .ok_or_else(|| SolveError::Fault("clique tree has no leaf".into()))?;
    let p = parent[ell];
    let c_ell = &tree.nodes[ell];
    if c_ell.len() != 4 {
        return fault(format!("deepest leaf {c_ell:?} does not have four vertices"));
    }
    let t = only_terminal(inst, c_ell)?;

    let mut picks: Vec<(usize, Vertex)> = Vec::new();
    for &c in &adj[p] {
        if c == ell || c == parent[p] || !is_leaf(c) {
            continue;
        }
        let common: Vec<Vertex> = tree.nodes[c].intersection(c_ell).copied().collect();
        if let [v] = common.as_slice() {
            if picks.iter().all(|(_, u)| u != v) {
                picks.push((c, *v));
            }
        }
        if picks.len() == 2 {
            break;
        }
    }
    let [(cx, x), (cy, y)] = picks[..] else {
        return fault(format!("no two sibling leaves meet {c_ell:?} in distinct single vertices"));
    };
    let z = *c_ell
        .iter()
        .find(|&&v| v != t && v != x && v != y)
        .expect("four-vertex clique");
    let (c_x, c_y) = (&tree.nodes[cx], &tree.nodes[cy]);
    if c_x.len() != 4 || c_y.len() != 4 {
        return fault("sibling leaf does not have four vertices");
    }
    let t_x = only_terminal(inst, c_x)?;
    let t_y = only_terminal(inst, c_y)?;
    if t_x == x || t_y == y {
        return fault("sibling leaf meets the deepest leaf in its terminal");
    }
    let shared_set: Vec<Vertex> = c_x.intersection(c_y).copied().collect();
    let shared = match shared_set.as_slice() {
        [] => None,
        [s] => Some(*s),
        _ => return fault(format!("sibling leaves share {shared_set:?}")),
    };
    let rest = |c: &BTreeSet<Vertex>, a: Vertex, b: Vertex| -> Vec<Vertex> {
        let mut r: Vec<Vertex> = c.iter().copied().filter(|&v| v != a && v != b).collect();
        if let Some(s) = shared {
            r.sort_by_key(|&v| (v != s, v));
        }
        r
    };
    let xr = rest(c_x, t_x, x);
    let yr = rest(c_y, t_y, y);
    Ok(MegaBranchContext {
        c_ell: c_ell.clone(),
        c_p: tree.nodes[p].clone(),
        c_x: c_x.clone(),
        c_y: c_y.clone(),
        t,
        x,
        y,
        z,
        t_x,
        x1: xr[0],
        x2: xr[1],
        t_y,
        y1: yr[0],
        y2: yr[1],
        shared,
    })
}

/// For an instance where no earlier rule applies: either the first
/// component is small enough to enumerate, or its leaf-cluster context.
pub fn select_mega_context(inst: &Instance) -> Result<MegaSelection, SolveError> {
    let comp = inst
        .graph
        .components()
        .into_iter()
        .next()
        .ok_or_else(|| SolveError::Fault("empty graph at branching".into()))?;
    let sub = inst.graph.induced(&comp.iter().copied().collect());
    let tree = build_clique_tree(&sub).map_err(|e| SolveError::Fault(e.to_string()))?;
    if tree.nodes.len() <= SMALL_TREE_NODES {
        return Ok(MegaSelection::Small(comp));
    }
    Ok(MegaSelection::Mega(mega_context(inst, &tree)?))
}

/// Chooses the branching step for a reduced instance.
pub fn plan_branch(inst: &Instance) -> Result<BranchPlan, SolveError> {
    let simple: [(Rule, fn(&Instance) -> Option<Vec<Child>>); 2] = [
        (Rule::BranchSingleTerminalNeighbour, rule_single_terminal_neighbour),
        (Rule::BranchSimplicialTriangle, rule_simplicial_triangle),
    ];
    for (rule, f) in simple {
        if let Some(children) = f(inst) {
            return Ok(BranchPlan::Branch { rule, children });
        }
    }
    if let Some(children) = rule_large_clique(inst)? {
        return Ok(BranchPlan::Branch { rule: Rule::BranchLargeClique, children });
    }
    let rest: [(Rule, fn(&Instance) -> Option<Vec<Child>>); 3] = [
        (Rule::BranchNonterminalSimplicial, rule_nonterminal_simplicial),
        (Rule::BranchTwoTerminalLeaf, rule_two_terminal_leaf),
        (Rule::BranchSharedTerminal, rule_shared_terminal),
    ];
    for (rule, f) in rest {
        if let Some(children) = f(inst) {
            return Ok(BranchPlan::Branch { rule, children });
        }
    }
    match select_mega_context(inst)? {
        MegaSelection::Small(comp) => Ok(BranchPlan::Small(comp)),
        MegaSelection::Mega(ctx) => Ok(BranchPlan::Branch { rule: Rule::BranchLeafCluster, children: ctx.children() }),
    }
}

struct Search {
    nodes: u64,
    max_depth: usize,
}

impl Search {
    /// Returns the picks below this node on success, plus the trace steps
    /// of this node and, on success, of the successful descendants.
    fn run(&mut self, mut inst: Instance, depth: usize) -> Result<(Option<BTreeSet<Vertex>>, Vec<TraceStep>), SolveError> {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        let mut trace = RuleTrace::default();
        loop {
            match reduce_fixpoint(&mut inst, &mut trace)? {
                Reduction::No => return Ok((None, trace.steps)),
                Reduction::Yes => {
                    let picks = trace.picked().collect();
                    return Ok((Some(picks), trace.steps));
                }
                Reduction::Reduced => {}
            }
            match plan_branch(&inst)? {
                BranchPlan::Small(comp) => {
                    let q: BTreeSet<Vertex> = comp.iter().copied().collect();
                    let sub = Instance::new(
                        inst.graph.induced(&q),
                        inst.terminals.intersection(&q).copied().collect(),
                        inst.k,
                    )?;
                    let cap = (inst.k.max(0) as usize).min(SMALL_SUBSET_CAP);
                    let Some(best) = minimum_triangle_hitting_set(&sub, cap) else {
                        trace.push(TraceStep::new(Rule::SolveSmallComponent));
                        return Ok((None, trace.steps));
                    };
                    inst.remove_vertices(&q)?;
                    inst.k -= best.len() as i64;
                    record(&mut trace, Rule::SolveSmallComponent, &q, &best);
                }
                BranchPlan::Branch { rule, children } => {
                    for (i, child) in children.iter().enumerate() {
                        if inst.k - (child.picked.len() as i64) < 0 {
                            continue;
                        }
                        let next = child.apply(&inst)?;
                        let (found, sub_steps) = self.run(next, depth + 1)?;
                        if let Some(sub) = found {
                            let mut step = TraceStep::new(rule);
                            step.branch = Some(i);
                            step.deleted_vertices = child.deleted.iter().copied().collect();
                            step.picked = child.picked.iter().copied().collect();
                            step.delta_k = -(child.picked.len() as i64);
                            let mut picks: BTreeSet<Vertex> = trace.picked().collect();
                            picks.extend(&child.picked);
                            picks.extend(sub);
                            trace.push(step);
                            trace.steps.extend(sub_steps);
                            return Ok((Some(picks), trace.steps));
                        }
                    }
                    return Ok((None, trace.steps));
                }
            }
        }
    }
}

/// Decides the instance, returning a verified solution when the answer is
/// YES.
pub fn solve(inst: &Instance) -> Result<SolveResult, SolveError> {
    chordality_certificate(&inst.graph).map_err(SolveError::NotChordal)?;
    let mut search = Search { nodes: 0, max_depth: 0 };
    let (found, steps) = search.run(inst.clone(), 0)?;
    let trace = RuleTrace { steps };
    let (answer, solution) = match found {
        Some(s) => {
            if s.len() as i64 > inst.k {
                return fault(format!("solution of size {} exceeds budget {}", s.len(), inst.k));
            }
            if !is_t_forest(&inst.minus(&s, 0)?) {
                return fault("reported solution leaves a terminal cycle");
            }
            (Answer::Yes, Some(s))
        }
        None => (Answer::No, None),
    };
    Ok(SolveResult { answer, solution, nodes_visited: search.nodes, max_depth: search.max_depth, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn inst(edges: &[(Vertex, Vertex)], t: &[Vertex], k: i64) -> Instance {
        let g = Graph::from_edges(edges.iter().copied()).unwrap();
        Instance::new(g, t.iter().copied().collect(), k).unwrap()
    }

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    fn clique(vs: &[Vertex]) -> Vec<(Vertex, Vertex)> {
        let mut e = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                e.push((a, b));
            }
        }
        e
    }

    #[test]
    fn triangle_answers() {
        let r = solve(&inst(&[(1, 2), (2, 3), (1, 3)], &[1], 1)).unwrap();
        assert_eq!(r.answer, Answer::Yes);
        assert_eq!(r.solution.unwrap().len(), 1);
        let r = solve(&inst(&[(1, 2), (2, 3), (1, 3)], &[1], 0)).unwrap();
        assert_eq!(r.answer, Answer::No);
    }

    #[test]
    fn two_disjoint_triangles_need_two() {
        let e = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)];
        assert_eq!(solve(&inst(&e, &[1, 4], 1)).unwrap().answer, Answer::No);
        assert_eq!(solve(&inst(&e, &[1, 4], 2)).unwrap().answer, Answer::Yes);
    }

    #[test]
    fn isolated_k4_component_case_three() {
        let mut i = inst(&clique(&[1, 2, 3, 4]), &[1], 1);
        let mut tr = RuleTrace::default();
        assert_eq!(reduce_fixpoint(&mut i, &mut tr).unwrap(), Reduction::Yes);
        assert_eq!(i.k, 0);
        assert_eq!(tr.picked().collect::<Vec<_>>(), vec![1]);
        assert_eq!(tr.steps[0].rule, Rule::SolveCliqueComponent);
    }

    #[test]
    fn isolated_edge_and_pendant() {
        let mut i = inst(&[(1, 2), (2, 3), (1, 3), (3, 4), (5, 6)], &[1, 4], 1);
        let mut tr = RuleTrace::default();
        // the triangle component is a clique with two non-terminals: pick one
        assert_eq!(reduce_fixpoint(&mut i, &mut tr).unwrap(), Reduction::Yes);
        assert!(tr.steps.iter().any(|s| s.rule == Rule::SolveBridge));
        assert!(tr.picked().count() <= 1);
    }

    #[test]
    fn simplicial_triangle_children() {
        // triangle {1,2,3} glued to K4 {2,3,4,5}; 1 simplicial with neighbours 2,3
        let mut e = vec![(1, 2), (1, 3)];
        e.extend(clique(&[2, 3, 4, 5]));
        let i = inst(&e, &[1, 4, 5], 1);
        match plan_branch(&i).unwrap() {
            BranchPlan::Branch { rule, children } => {
                assert_eq!(rule, Rule::BranchSimplicialTriangle);
                assert_eq!(children[0], Child { deleted: set(&[1, 2]), picked: set(&[2]) });
                assert_eq!(children[1], Child { deleted: set(&[1, 3]), picked: set(&[3]) });
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn k5_with_one_terminal() {
        let r = solve(&inst(&clique(&[1, 2, 3, 4, 5]), &[1], 1)).unwrap();
        assert_eq!(r.answer, Answer::Yes);
        assert_eq!(r.solution, Some(set(&[1])));
    }

    #[test]
    fn leaf_cluster_children_follow_table() {
        let ctx = MegaBranchContext {
            c_ell: set(&[1, 2, 3, 4]),
            c_p: set(&[2, 3, 4]),
            c_x: set(&[2, 5, 6, 7]),
            c_y: set(&[3, 8, 9, 10]),
            t: 1,
            x: 2,
            y: 3,
            z: 4,
            t_x: 5,
            x1: 6,
            x2: 7,
            t_y: 8,
            y1: 9,
            y2: 10,
            shared: None,
        };
        let ks: Vec<usize> = ctx.children().iter().map(|c| c.picked.len()).collect();
        assert_eq!(ks, vec![3, 4, 4, 5, 1, 3, 4]);
        assert_eq!(ctx.children()[4].picked, set(&[2]));
        let shared = MegaBranchContext { y1: 6, shared: Some(6), ..ctx };
        let ks: Vec<usize> = shared.children().iter().map(|c| c.picked.len()).collect();
        assert_eq!(ks, vec![3, 4, 4, 4, 1, 3, 4]);
    }

    #[test]
    fn rejects_non_chordal() {
        let c4 = inst(&[(1, 2), (2, 3), (3, 4), (4, 1)], &[1], 1);
        assert!(matches!(solve(&c4), Err(SolveError::NotChordal(_))));
    }
}
