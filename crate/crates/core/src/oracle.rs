//! Exhaustive baselines: subset enumeration, the triangle hitting-set view
//! and the vertex-cover reduction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

use crate::chordal::chordality_certificate;
use crate::graph::{t_triangles, Graph, Instance, Vertex};

pub const DEFAULT_MAX_N: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("graph is not chordal; induced cycle {0:?}")]
    NotChordal(Vec<Vertex>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Triangle test when the graph is chordal, cycle test otherwise.
    Auto,
    /// Hit every terminal triangle. Only exact on chordal graphs.
    Triangles,
    /// No terminal on a cycle after deletion.
    Cycles,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleAnswer {
    pub yes: bool,
    /// The first solution in (size, lexicographic) order.
    pub solution: Option<BTreeSet<Vertex>>,
}

/// Dense bitmask copy of an instance with at most 64 vertices.
struct Dense {
    ids: Vec<Vertex>,
    adj: Vec<u64>,
    terminals: u64,
    triangles: Vec<u64>,
}

impl Dense {
    fn new(inst: &Instance) -> Self {
        let ids: Vec<Vertex> = inst.graph.vertices().collect();
        assert!(ids.len() <= 64, "dense view limited to 64 vertices");
        let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![0u64; ids.len()];
        for (u, v) in inst.graph.edges() {
            adj[pos[&u]] |= 1 << pos[&v];
            adj[pos[&v]] |= 1 << pos[&u];
        }
        let terminals = inst.terminals.iter().fold(0u64, |m, v| m | 1 << pos[v]);
        let triangles = t_triangles(inst)
            .iter()
            .map(|t| t.vertices().iter().fold(0u64, |m, v| m | 1 << pos[v]))
            .collect();
        Dense { ids, adj, terminals, triangles }
    }

    fn hits_triangles(&self, removed: u64) -> bool {
        self.triangles.iter().all(|&t| t & removed != 0)
    }

    /// Reachable set from `start` inside `alive`.
    fn reach(&self, start: usize, alive: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[i] & alive & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// A surviving terminal lies on a cycle iff two of its neighbours are
    /// connected without it.
    fn cycle_free(&self, removed: u64) -> bool {
        let n = self.ids.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let alive = full & !removed;
        let mut ts = self.terminals & alive;
        while ts != 0 {
            let t = ts.trailing_zeros() as usize;
            ts &= ts - 1;
            let without = alive & !(1 << t);
            let mut nbrs = self.adj[t] & without;
            while nbrs != 0 {
                let a = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if self.reach(a, without) & nbrs != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn mask(&self, idx: &[usize]) -> u64 {
        idx.iter().fold(0u64, |m, &i| m | 1 << i)
    }

    fn set(&self, idx: &[usize]) -> BTreeSet<Vertex> {
        idx.iter().map(|&i| self.ids[i]).collect()
    }

    /// First subset in (size, lexicographic) order of size at most `cap`
    /// accepted by `ok`.
    fn first(&self, cap: usize, ok: impl Fn(u64) -> bool) -> Option<BTreeSet<Vertex>> {
        let n = self.ids.len();
        for s in 0..=cap.min(n) {
            if let Some(c) = (0..n).combinations(s).find(|c| ok(self.mask(c))) {
                return Some(self.set(&c));
            }
        }
        None
    }
}

/// Exact decision by enumerating vertex subsets of size at most k.
pub fn oracle_decide(inst: &Instance) -> Result<OracleAnswer, OracleError> {
    oracle_decide_with(inst, DEFAULT_MAX_N, OracleMode::Auto)
}

pub fn oracle_decide_with(inst: &Instance, max_n: usize, mode: OracleMode) -> Result<OracleAnswer, OracleError> {
    let n = inst.graph.vertex_count();
    if n > max_n.min(64) {
        return Err(OracleError::TooLarge { n, max: max_n.min(64) });
    }
    if inst.k < 0 {
        return Ok(OracleAnswer { yes: false, solution: None });
    }
    let triangles = match mode {
        OracleMode::Auto => chordality_certificate(&inst.graph).is_ok(),
        OracleMode::Triangles => true,
        OracleMode::Cycles => false,
    };
    let d = Dense::new(inst);
    let cap = inst.k as usize;
    let solution = if triangles {
        d.first(cap, |m| d.hits_triangles(m))
    } else {
        d.first(cap, |m| d.cycle_free(m))
    };
    Ok(OracleAnswer { yes: solution.is_some(), solution })
}

/// Smallest set of size at most `cap` meeting every terminal triangle,
/// first in lexicographic order among those of that size.
pub fn minimum_triangle_hitting_set(inst: &Instance, cap: usize) -> Option<BTreeSet<Vertex>> {
    let d = Dense::new(inst);
    d.first(cap, |m| d.hits_triangles(m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: BTreeSet<Vertex>,
    pub sets: Vec<[Vertex; 3]>,
    pub budget: i64,
}

impl HittingSetInstance {
    /// Header `p 3hs <|U|> <#sets> <k>` followed by one set per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("p 3hs {} {} {}\n", self.universe.len(), self.sets.len(), self.budget);
        for s in &self.sets {
            let _ = writeln!(out, "{} {} {}", s[0], s[1], s[2]);
        }
        out
    }
}

/// The terminal triangles of a chordal instance as a 3-hitting-set
/// instance with the same budget.
pub fn export_3hs(inst: &Instance) -> Result<HittingSetInstance, OracleError> {
    chordality_certificate(&inst.graph).map_err(OracleError::NotChordal)?;
    Ok(HittingSetInstance {
        universe: inst.graph.vertex_set(),
        sets: t_triangles(inst).iter().map(|t| t.vertices()).collect(),
        budget: inst.k,
    })
}

/// Smallest hitting set of size at most the budget, by enumeration.
pub fn brute_force_hitting_set(hs: &HittingSetInstance) -> Option<BTreeSet<Vertex>> {
    if hs.budget < 0 {
        return None;
    }
    let u: Vec<Vertex> = hs.universe.iter().copied().collect();
    for s in 0..=(hs.budget as usize).min(u.len()) {
        for c in u.iter().copied().combinations(s) {
            if hs.sets.iter().all(|set| set.iter().any(|v| c.contains(v))) {
                return Some(c.into_iter().collect());
            }
        }
    }
    None
}

/// Split instance whose clique side is `V(g)` and whose independent side
/// holds one degree-two terminal per edge of `g`, numbered after the
/// largest vertex of `g` in edge order.
pub fn vc_to_sfvs(g: &Graph, k: i64) -> Instance {
    let base: Vec<Vertex> = g.vertices().collect();
    let mut h = Graph::with_vertices(base.iter().copied());
    for (i, &a) in base.iter().enumerate() {
        for &b in &base[i + 1..] {
            h.add_edge(a, b).expect("fresh clique edge");
        }
    }
    let mut next = g.max_vertex().map_or(1, |m| m + 1);
    let mut terminals = BTreeSet::new();
    for (u, v) in g.edges() {
        h.add_vertex(next);
        h.add_edge(next, u).expect("fresh vertex");
        h.add_edge(next, v).expect("fresh vertex");
        terminals.insert(next);
        next += 1;
    }
    Instance::new(h, terminals, k).expect("terminals were added to the graph")
}

/// Size of a minimum vertex cover, by enumeration.
pub fn brute_force_vertex_cover(g: &Graph) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    (0..=vs.len())
        .find(|&s| {
            vs.iter()
                .copied()
                .combinations(s)
                .any(|c| edges.iter().all(|(a, b)| c.contains(a) || c.contains(b)))
        })
        .expect("the whole vertex set is a cover")
}
