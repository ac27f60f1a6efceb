//! Ordered log of the reduction and branching steps applied to an instance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Vertex};

/// Every rule the kernel or the solver can apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    // kernel, in application order
    KernelDecide,
    KernelIsolated,
    KernelNoTerminalNeighbour,
    KernelBridge,
    KernelCliqueTerminal,
    KernelLargeMatching,
    KernelDegreeBound,
    KernelApproxBound,
    KernelK0Expansion,
    KernelK1Expansion,
    // solver reductions
    SolveNo,
    SolveYes,
    SolveCliqueComponent,
    SolveNoTerminalNeighbour,
    SolveBridge,
    SolveSmallComponent,
    // solver branching, in priority order
    BranchSingleTerminalNeighbour,
    BranchSimplicialTriangle,
    BranchLargeClique,
    BranchNonterminalSimplicial,
    BranchTwoTerminalLeaf,
    BranchSharedTerminal,
    BranchLeafCluster,
}

impl Rule {
    pub const KERNEL: [Rule; 10] = [
        Rule::KernelDecide,
        Rule::KernelIsolated,
        Rule::KernelNoTerminalNeighbour,
        Rule::KernelBridge,
        Rule::KernelCliqueTerminal,
        Rule::KernelLargeMatching,
        Rule::KernelDegreeBound,
        Rule::KernelApproxBound,
        Rule::KernelK0Expansion,
        Rule::KernelK1Expansion,
    ];

    pub const BRANCHING: [Rule; 7] = [
        Rule::BranchSingleTerminalNeighbour,
        Rule::BranchSimplicialTriangle,
        Rule::BranchLargeClique,
        Rule::BranchNonterminalSimplicial,
        Rule::BranchTwoTerminalLeaf,
        Rule::BranchSharedTerminal,
        Rule::BranchLeafCluster,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::KernelDecide => "kernel-decide",
            Rule::KernelIsolated => "kernel-isolated",
            Rule::KernelNoTerminalNeighbour => "kernel-no-terminal-neighbour",
            Rule::KernelBridge => "kernel-bridge",
            Rule::KernelCliqueTerminal => "kernel-clique-terminal",
            Rule::KernelLargeMatching => "kernel-large-matching",
            Rule::KernelDegreeBound => "kernel-degree-bound",
            Rule::KernelApproxBound => "kernel-approx-bound",
            Rule::KernelK0Expansion => "kernel-k0-expansion",
            Rule::KernelK1Expansion => "kernel-k1-expansion",
            Rule::SolveNo => "solve-no",
            Rule::SolveYes => "solve-yes",
            Rule::SolveCliqueComponent => "solve-clique-component",
            Rule::SolveNoTerminalNeighbour => "solve-no-terminal-neighbour",
            Rule::SolveBridge => "solve-bridge",
            Rule::SolveSmallComponent => "solve-small-component",
            Rule::BranchSingleTerminalNeighbour => "branch-single-terminal-neighbour",
            Rule::BranchSimplicialTriangle => "branch-simplicial-triangle",
            Rule::BranchLargeClique => "branch-large-clique",
            Rule::BranchNonterminalSimplicial => "branch-nonterminal-simplicial",
            Rule::BranchTwoTerminalLeaf => "branch-two-terminal-leaf",
            Rule::BranchSharedTerminal => "branch-shared-terminal",
            Rule::BranchLeafCluster => "branch-leaf-cluster",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    /// Which child was taken, for branching steps.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branch: Option<usize>,
    pub deleted_vertices: Vec<Vertex>,
    pub deleted_edges: Vec<Edge>,
    /// Vertices committed to the solution by this step.
    pub picked: Vec<Vertex>,
    pub delta_k: i64,
}

impl TraceStep {
    pub fn new(rule: Rule) -> Self {
        TraceStep {
            rule,
            branch: None,
            deleted_vertices: Vec::new(),
            deleted_edges: Vec::new(),
            picked: Vec::new(),
            delta_k: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTrace {
    pub steps: Vec<TraceStep>,
}

impl RuleTrace {
    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn picked(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.steps.iter().flat_map(|s| s.picked.iter().copied())
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }
}
