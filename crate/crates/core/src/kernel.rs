//! Quadratic kernel for subset-FVS on split graphs.
//!
//! Rules are applied first-match: each step applies the earliest rule that
//! changes the instance, then scanning restarts from the top. A split
//! partition of the input is fixed once and restricted to the surviving
//! vertices; rules only delete vertices or clique-to-independent edges, so
//! the restriction stays a split partition throughout.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::chordal::{is_highlighted, split_partition, split_violation, SplitPartition};
use crate::expansion::{
    find_expansion, find_matching_expansion_with_witness, maximum_matching, BipartiteView,
    ExpansionError,
};
use crate::graph::{edge, find_bridges, find_t_triangle, Graph, GraphError, Instance, Vertex};
use crate::trace::{Rule, RuleTrace, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("graph is not split; vertices {0} and {1} violate the canonical partition")]
    NotSplit(Vertex, Vertex),
    #[error("partition is not a split partition of the graph")]
    BadPartition,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error("kernel invariant broken: {0}")]
    Fault(String),
}

/// The constant-size YES instance: a triangle whose single terminal can be
/// removed with budget one.
pub fn trivial_yes() -> Instance {
    let g = Graph::from_edges([(1, 2), (2, 3), (1, 3)]).expect("triangle");
    Instance::new(g, BTreeSet::from([1]), 1).expect("terminal present")
}

/// The same triangle with budget zero.
pub fn trivial_no() -> Instance {
    let mut i = trivial_yes();
    i.k = 0;
    i
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Reduced,
    TrivialYes,
    TrivialNo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelOutcome {
    pub kind: KernelKind,
    /// The reduced instance, or the matching trivial instance.
    pub instance: Instance,
    /// Clique side of the reduced instance (empty for trivial outcomes).
    pub clique_side: BTreeSet<Vertex>,
    pub trace: RuleTrace,
}

impl KernelOutcome {
    /// The decision if the kernel settled it.
    pub fn decided(&self) -> Option<bool> {
        match self.kind {
            KernelKind::Reduced => None,
            KernelKind::TrivialYes => Some(true),
            KernelKind::TrivialNo => Some(false),
        }
    }
}

/// Greedy packing of disjoint T-triangles through independent-side vertices,
/// and the partition of both sides it induces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ApproxPartition {
    pub s_tilde: BTreeSet<Vertex>,
    pub k_s: BTreeSet<Vertex>,
    pub i_s: BTreeSet<Vertex>,
    pub k0: BTreeSet<Vertex>,
    pub k1: BTreeSet<Vertex>,
    pub i0: BTreeSet<Vertex>,
    pub i1: BTreeSet<Vertex>,
}

/// What one call to [`KernelState::step`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Applied(Rule),
    /// The first rule settled the instance.
    Decided(bool),
    /// No rule applies.
    Fixpoint,
}

#[derive(Debug, Clone)]
pub struct KernelState {
    pub instance: Instance,
    pub partition: SplitPartition,
    pub trace: RuleTrace,
}

impl KernelState {
    pub fn new(inst: Instance) -> Result<Self, KernelError> {
        match split_partition(&inst.graph) {
            Some(sp) => Self::with_partition(inst, sp),
            None => {
                let (u, v) = split_violation(&inst.graph).expect("non-split graph");
                Err(KernelError::NotSplit(u, v))
            }
        }
    }

    pub fn with_partition(inst: Instance, sp: SplitPartition) -> Result<Self, KernelError> {
        if !sp.is_valid_for(&inst.graph) {
            return Err(KernelError::BadPartition);
        }
        Ok(KernelState { instance: inst, partition: sp, trace: RuleTrace::default() })
    }

    fn k(&self) -> i64 {
        self.instance.k
    }

    fn delete_vertices(&mut self, rule: Rule, vs: BTreeSet<Vertex>, picked: bool) -> Result<(), KernelError> {
        self.instance.remove_vertices(&vs)?;
        for v in &vs {
            self.partition.clique_side.remove(v);
            self.partition.independent_side.remove(v);
        }
        let mut step = TraceStep::new(rule);
        step.deleted_vertices = vs.iter().copied().collect();
        if picked {
            step.picked = step.deleted_vertices.clone();
            step.delta_k = -(vs.len() as i64);
            self.instance.k -= vs.len() as i64;
        }
        self.trace.push(step);
        Ok(())
    }

    fn delete_edge(&mut self, rule: Rule, u: Vertex, v: Vertex) -> Result<(), KernelError> {
        let crossing = self.partition.clique_side.contains(&u) != self.partition.clique_side.contains(&v);
        if !crossing {
            return Err(KernelError::Fault(format!("edge {u}-{v} does not cross the partition")));
        }
        self.instance.graph.remove_edge(u, v)?;
        let mut step = TraceStep::new(rule);
        step.deleted_edges.push(edge(u, v));
        self.trace.push(step);
        Ok(())
    }

    /// Independent-side neighbours of `v`.
    pub fn independent_neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.instance
            .graph
            .neighbors(v)
            .intersection(&self.partition.independent_side)
            .copied()
            .collect()
    }

    /// The bipartite graph between the independent-side neighbours of a
    /// clique vertex `v` and the other clique vertices adjacent to them.
    pub fn bipartite_around(&self, v: Vertex) -> BipartiteView {
        let g = &self.instance.graph;
        let side_q = self.independent_neighbors(v);
        let mut side_p = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for &q in &side_q {
            for &p in g.neighbors(q) {
                if p != v {
                    side_p.insert(p);
                    edges.insert((p, q));
                }
            }
        }
        BipartiteView::new(side_p, side_q, edges).expect("independent side is independent")
    }

    /// Decides trivial instances; `None` if none of the five cases holds.
    pub fn rule_decide(&self) -> Option<bool> {
        let inst = &self.instance;
        if inst.terminals.is_empty() {
            return Some(true);
        }
        let has_tri = find_t_triangle(inst).is_some();
        if inst.k < 0 || (inst.k == 0 && has_tri) {
            return Some(false);
        }
        if !has_tri {
            return Some(true);
        }
        let ksize = self.partition.clique_side.len() as i64;
        if ksize <= inst.k + 1 {
            return Some(true);
        }
        if ksize == inst.k + 2 {
            let ks: Vec<Vertex> = self.partition.clique_side.iter().copied().collect();
            for (i, &a) in ks.iter().enumerate() {
                for &b in &ks[i + 1..] {
                    if !is_highlighted(&inst.graph, &self.partition, (a, b)).expect("clique edge") {
                        return Some(true);
                    }
                }
            }
        }
        None
    }

    fn rule_isolated(&mut self) -> Result<bool, KernelError> {
        let g = &self.instance.graph;
        let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) else {
            return Ok(false);
        };
        self.delete_vertices(Rule::KernelIsolated, BTreeSet::from([v]), false)?;
        Ok(true)
    }

    fn rule_no_terminal_neighbour(&mut self) -> Result<bool, KernelError> {
        let inst = &self.instance;
        let found = inst
            .graph
            .vertices()
            .find(|&v| !inst.is_terminal(v) && inst.terminal_neighbors(v).next().is_none());
        let Some(v) = found else { return Ok(false) };
        self.delete_vertices(Rule::KernelNoTerminalNeighbour, BTreeSet::from([v]), false)?;
        Ok(true)
    }

    fn rule_bridge(&mut self) -> Result<bool, KernelError> {
        let Some(&(u, v)) = find_bridges(&self.instance.graph).iter().next() else {
            return Ok(false);
        };
        self.delete_edge(Rule::KernelBridge, u, v)?;
        Ok(true)
    }

    fn rule_clique_terminal(&mut self) -> Result<bool, KernelError> {
        let found = self
            .partition
            .clique_side
            .iter()
            .copied()
            .find(|v| self.instance.is_terminal(*v));
        let Some(t) = found else { return Ok(false) };
        self.delete_vertices(Rule::KernelCliqueTerminal, BTreeSet::from([t]), true)?;
        Ok(true)
    }

    fn rule_large_matching(&mut self) -> Result<bool, KernelError> {
        let threshold = (self.k() + 1).max(0) as usize;
        let found = self
            .partition
            .clique_side
            .iter()
            .copied()
            .find(|&v| maximum_matching(&self.bipartite_around(v)).len() >= threshold);
        let Some(v) = found else { return Ok(false) };
        self.delete_vertices(Rule::KernelLargeMatching, BTreeSet::from([v]), true)?;
        Ok(true)
    }

    fn rule_degree_bound(&mut self) -> Result<bool, KernelError> {
        let k = self.k().max(0) as usize;
        let found = self
            .partition
            .clique_side
            .iter()
            .copied()
            .find(|&v| self.independent_neighbors(v).len() > k);
        let Some(v) = found else { return Ok(false) };
        let view = self.bipartite_around(v);
        let res = find_matching_expansion_with_witness(&view, 1)?;
        let w = res
            .unsaturated_witness
            .ok_or_else(|| KernelError::Fault("witness missing".into()))?;
        self.delete_edge(Rule::KernelDegreeBound, v, w)?;
        Ok(true)
    }

    /// Builds the greedy packing and the six-way partition. Stops as soon
    /// as the packing exceeds `3k`.
    pub fn approx_partition(&self) -> ApproxPartition {
        let g = &self.instance.graph;
        let k = &self.partition.clique_side;
        let i = &self.partition.independent_side;
        let limit = 3 * self.k().max(0) as usize;
        let mut ap = ApproxPartition::default();
        for &v in i {
            let free: Vec<Vertex> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|u| !ap.s_tilde.contains(u))
                .take(2)
                .collect();
            if free.len() == 2 {
                ap.s_tilde.extend([v, free[0], free[1]]);
                if ap.s_tilde.len() > limit {
                    break;
                }
            }
        }
        ap.k_s = k.intersection(&ap.s_tilde).copied().collect();
        ap.i_s = i.intersection(&ap.s_tilde).copied().collect();
        for &u in k.difference(&ap.k_s) {
            let only_is = g.neighbors(u).iter().all(|x| !i.contains(x) || ap.i_s.contains(x));
            if only_is {
                ap.k0.insert(u);
            } else {
                ap.k1.insert(u);
            }
        }
        for &x in i.difference(&ap.i_s) {
            if g.neighbors(x).is_subset(&ap.k_s) {
                ap.i0.insert(x);
            } else {
                ap.i1.insert(x);
            }
        }
        ap
    }

    fn rule_k0_expansion(&mut self, ap: &ApproxPartition) -> Result<bool, KernelError> {
        if ap.k0.len() < 2 * ap.i_s.len() {
            return Ok(false);
        }
        let g = &self.instance.graph;
        let edges = ap
            .i_s
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().filter(|u| ap.k0.contains(u)).map(move |&u| (x, u)))
            .collect();
        let view = BipartiteView::new(ap.i_s.clone(), ap.k0.clone(), edges)?;
        let res = find_expansion(&view, 2)?;
        self.delete_vertices(Rule::KernelK0Expansion, res.x, true)?;
        Ok(true)
    }

    fn rule_k1_expansion(&mut self, ap: &ApproxPartition) -> Result<bool, KernelError> {
        if ap.k1.len() < 2 * ap.s_tilde.len() {
            return Ok(false);
        }
        let g = &self.instance.graph;
        let mut edges = BTreeSet::new();
        for &x in &ap.i_s {
            for &u in g.neighbors(x).intersection(&ap.k1) {
                edges.insert((x, u));
            }
        }
        for &a in &ap.k_s {
            for &u in g.neighbors(a).intersection(&ap.k1) {
                let witnessed = g.neighbors(a).iter().any(|w| ap.i1.contains(w) && g.has_edge(*w, u));
                if witnessed {
                    edges.insert((a, u));
                }
            }
        }
        let view = BipartiteView::new(ap.s_tilde.clone(), ap.k1.clone(), edges)?;
        let res = find_expansion(&view, 2)?;
        self.delete_vertices(Rule::KernelK1Expansion, res.x, true)?;
        Ok(true)
    }

    /// Applies the first applicable rule.
    pub fn step(&mut self) -> Result<Step, KernelError> {
        if let Some(answer) = self.rule_decide() {
            self.trace.push(TraceStep::new(Rule::KernelDecide));
            return Ok(Step::Decided(answer));
        }
        if self.rule_isolated()? {
            return Ok(Step::Applied(Rule::KernelIsolated));
        }
        if self.rule_no_terminal_neighbour()? {
            return Ok(Step::Applied(Rule::KernelNoTerminalNeighbour));
        }
        if self.rule_bridge()? {
            return Ok(Step::Applied(Rule::KernelBridge));
        }
        if self.rule_clique_terminal()? {
            return Ok(Step::Applied(Rule::KernelCliqueTerminal));
        }
        if self.rule_large_matching()? {
            return Ok(Step::Applied(Rule::KernelLargeMatching));
        }
        if self.rule_degree_bound()? {
            return Ok(Step::Applied(Rule::KernelDegreeBound));
        }
        let ap = self.approx_partition();
        if ap.s_tilde.len() as i64 > 3 * self.k() {
            self.trace.push(TraceStep::new(Rule::KernelApproxBound));
            return Ok(Step::Decided(false));
        }
        if self.rule_k0_expansion(&ap)? {
            return Ok(Step::Applied(Rule::KernelK0Expansion));
        }
        if self.rule_k1_expansion(&ap)? {
            return Ok(Step::Applied(Rule::KernelK1Expansion));
        }
        Ok(Step::Fixpoint)
    }

    /// The rule [`step`](Self::step) would apply, without applying it.
    pub fn next_rule(&self) -> Result<Option<Rule>, KernelError> {
        let mut probe = self.clone();
        let before = probe.trace.len();
        match probe.step()? {
            Step::Fixpoint => Ok(None),
            _ => Ok(probe.trace.steps.get(before).map(|s| s.rule)),
        }
    }
}

/// Runs the rules to a fixpoint.
pub fn kernelize(inst: Instance) -> Result<KernelOutcome, KernelError> {
    kernelize_state(KernelState::new(inst)?)
}

pub fn kernelize_state(mut state: KernelState) -> Result<KernelOutcome, KernelError> {
    let input_k = state.instance.k;
    let budget = state.instance.graph.vertex_count() + state.instance.graph.edge_count() + 1;
    for _ in 0..=budget {
        match state.step()? {
            Step::Applied(_) => continue,
            Step::Decided(yes) => {
                let (kind, instance) = if yes {
                    (KernelKind::TrivialYes, trivial_yes())
                } else {
                    (KernelKind::TrivialNo, trivial_no())
                };
                return Ok(KernelOutcome { kind, instance, clique_side: BTreeSet::new(), trace: state.trace });
            }
            Step::Fixpoint => {
                let out = KernelOutcome {
                    kind: KernelKind::Reduced,
                    clique_side: state.partition.clique_side.clone(),
                    instance: state.instance,
                    trace: state.trace,
                };
                check_reduced(&out, input_k)?;
                return Ok(out);
            }
        }
    }
    Err(KernelError::Fault("rule loop did not terminate".into()))
}

/// Size and structure promises of a reduced kernel.
fn check_reduced(out: &KernelOutcome, input_k: i64) -> Result<(), KernelError> {
    let inst = &out.instance;
    let k = inst.k;
    let fault = |m: String| Err(KernelError::Fault(m));
    if k > input_k {
        return fault("budget grew".into());
    }
    let ksize = out.clique_side.len() as i64;
    if ksize > 10 * k {
        return fault(format!("clique side {ksize} exceeds 10k = {}", 10 * k));
    }
    let isize = (inst.graph.vertex_count() - out.clique_side.len()) as i64;
    if isize > k * ksize {
        return fault(format!("independent side {isize} exceeds k|K| = {}", k * ksize));
    }
    for &v in &out.clique_side {
        let deg_i = inst.graph.neighbors(v).iter().filter(|u| !out.clique_side.contains(u)).count();
        if deg_i as i64 > k {
            return fault(format!("clique vertex {v} has {deg_i} independent neighbours"));
        }
    }
    for v in inst.graph.vertices() {
        if inst.graph.degree(v) < 2 {
            return fault(format!("vertex {v} has degree below two"));
        }
        if out.clique_side.contains(&v) == inst.is_terminal(v) {
            return fault(format!("terminal set differs from the independent side at {v}"));
        }
    }
    Ok(())
}
