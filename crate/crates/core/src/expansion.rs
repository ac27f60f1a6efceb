//! Bipartite matchings and `t`-expansions.
//!
//! A `t`-expansion of `X` into `Y` gives every vertex of `X` exactly `t`
//! private partners in `Y`. Expansions are found through a matching in which
//! each `P` vertex is cloned `t` times; the pair `(X, Y)` is then read off
//! the alternating-reachability structure of that matching.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("invalid bipartite view: {0}")]
    InvalidView(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("expansion postcondition failed: {0}")]
    Fault(String),
}

/// A bipartite graph given by its two sides and `(p, q)` edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteView {
    pub side_p: BTreeSet<Vertex>,
    pub side_q: BTreeSet<Vertex>,
    pub edges: BTreeSet<(Vertex, Vertex)>,
}

impl BipartiteView {
    pub fn new(
        side_p: BTreeSet<Vertex>,
        side_q: BTreeSet<Vertex>,
        edges: BTreeSet<(Vertex, Vertex)>,
    ) -> Result<Self, ExpansionError> {
        if let Some(v) = side_p.intersection(&side_q).next() {
            return Err(ExpansionError::InvalidView(format!("vertex {v} on both sides")));
        }
        if let Some((p, q)) = edges
            .iter()
            .find(|(p, q)| !side_p.contains(p) || !side_q.contains(q))
        {
            return Err(ExpansionError::InvalidView(format!("edge {p}-{q} does not cross")));
        }
        Ok(BipartiteView { side_p, side_q, edges })
    }

    /// Neighbour lists of `P` vertices, in identifier order.
    pub fn p_adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.side_p.iter().map(|&p| (p, Vec::new())).collect();
        for &(p, q) in &self.edges {
            adj.get_mut(&p).expect("validated").push(q);
        }
        adj
    }

    /// Neighbour sets of `Q` vertices.
    pub fn q_adjacency(&self) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> =
            self.side_q.iter().map(|&q| (q, BTreeSet::new())).collect();
        for &(p, q) in &self.edges {
            adj.get_mut(&q).expect("validated").insert(p);
        }
        adj
    }

    pub fn isolated_q(&self) -> Option<Vertex> {
        self.q_adjacency()
            .into_iter()
            .find(|(_, ns)| ns.is_empty())
            .map(|(q, _)| q)
    }

    /// Subgraph induced by the kept vertices of each side.
    pub fn restrict(&self, keep_p: &BTreeSet<Vertex>, keep_q: &BTreeSet<Vertex>) -> Self {
        BipartiteView {
            side_p: self.side_p.intersection(keep_p).copied().collect(),
            side_q: self.side_q.intersection(keep_q).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(p, q)| keep_p.contains(p) && keep_q.contains(q))
                .copied()
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpansionResult {
    pub x: BTreeSet<Vertex>,
    pub y: BTreeSet<Vertex>,
    pub expansion_edges: BTreeSet<(Vertex, Vertex)>,
    pub unsaturated_witness: Option<Vertex>,
}

impl ExpansionResult {
    /// Checks every structural promise of an expansion against `b`.
    pub fn check(&self, b: &BipartiteView, t: usize) -> Result<(), ExpansionError> {
        let fault = |m: String| Err(ExpansionError::Fault(m));
        if self.x.is_empty() || self.y.is_empty() {
            return fault("empty side".into());
        }
        if !self.x.is_subset(&b.side_p) || !self.y.is_subset(&b.side_q) {
            return fault("sets escape their sides".into());
        }
        let mut per_p: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut saturated = BTreeSet::new();
        for &(p, q) in &self.expansion_edges {
            if !b.edges.contains(&(p, q)) {
                return fault(format!("{p}-{q} is not an edge"));
            }
            if !self.x.contains(&p) || !self.y.contains(&q) {
                return fault(format!("{p}-{q} leaves X x Y"));
            }
            if !saturated.insert(q) {
                return fault(format!("{q} saturated twice"));
            }
            *per_p.entry(p).or_default() += 1;
        }
        if let Some(p) = self.x.iter().find(|p| per_p.get(p).copied().unwrap_or(0) != t) {
            return fault(format!("{p} does not have exactly {t} partners"));
        }
        if saturated.len() != t * self.x.len() {
            return fault("wrong number of saturated vertices".into());
        }
        let q_adj = b.q_adjacency();
        for y in &self.y {
            if let Some(p) = q_adj[y].iter().find(|p| !self.x.contains(p)) {
                return fault(format!("{y} has neighbour {p} outside X"));
            }
        }
        if let Some(w) = self.unsaturated_witness {
            if !self.y.contains(&w) || saturated.contains(&w) {
                return fault(format!("witness {w} is saturated or outside Y"));
            }
        }
        Ok(())
    }

    pub fn saturated(&self) -> BTreeSet<Vertex> {
        self.expansion_edges.iter().map(|e| e.1).collect()
    }
}

/// Matching in which every `P` vertex may take up to `cap` partners.
/// Augmenting paths are tried from the lowest `P` vertex and lowest copy,
/// exploring `Q` neighbours in identifier order.
struct CapMatching {
    adj: BTreeMap<Vertex, Vec<Vertex>>,
    owner: BTreeMap<Vertex, Vertex>,
    load: BTreeMap<Vertex, usize>,
}

impl CapMatching {
    fn run(b: &BipartiteView, cap: usize) -> Self {
        let adj = b.p_adjacency();
        let mut m = CapMatching {
            load: adj.keys().map(|&p| (p, 0)).collect(),
            adj,
            owner: BTreeMap::new(),
        };
        let ps: Vec<Vertex> = m.adj.keys().copied().collect();
        for p in ps {
            for _ in 0..cap {
                let mut seen = BTreeSet::new();
                if !m.augment(p, &mut seen) {
                    break;
                }
                *m.load.get_mut(&p).expect("known") += 1;
            }
        }
        m
    }

    /// Finds an augmenting path from a free copy of `p`. On success the
    /// caller accounts for the new copy; reassignments keep loads fixed.
    fn augment(&mut self, p: Vertex, seen: &mut BTreeSet<Vertex>) -> bool {
        let ns = self.adj[&p].clone();
        for q in ns {
            if !seen.insert(q) {
                continue;
            }
            let free = match self.owner.get(&q) {
                None => true,
                Some(&o) => o != p && self.augment(o, seen),
            };
            if free {
                self.owner.insert(q, p);
                return true;
            }
        }
        false
    }

    fn pairs(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.owner.iter().map(|(&q, &p)| (p, q)).collect()
    }
}

/// A maximum matching, as `(p, q)` pairs.
pub fn maximum_matching(b: &BipartiteView) -> BTreeSet<(Vertex, Vertex)> {
    CapMatching::run(b, 1).pairs()
}

/// Reads `(X, Y)` off a maximum capacity-`t` matching: everything reachable
/// by alternating paths from a `P` vertex with spare capacity is discarded,
/// and the remainder forms the expansion.
fn extract(b: &BipartiteView, t: usize) -> ExpansionResult {
    let m = CapMatching::run(b, t);
    let q_adj = b.q_adjacency();
    let mut zp: BTreeSet<Vertex> = BTreeSet::new();
    let mut zq: BTreeSet<Vertex> = BTreeSet::new();
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for (&p, &l) in &m.load {
        if l < t {
            zp.insert(p);
            queue.push_back(p);
        }
    }
    while let Some(p) = queue.pop_front() {
        for &q in &m.adj[&p] {
            if !zq.insert(q) {
                continue;
            }
            if let Some(&o) = m.owner.get(&q) {
                if zp.insert(o) {
                    queue.push_back(o);
                }
            }
        }
    }
    debug_assert!(q_adj.keys().all(|q| zq.contains(q) <= m.owner.contains_key(q)));
    let x: BTreeSet<Vertex> = b.side_p.difference(&zp).copied().collect();
    let y: BTreeSet<Vertex> = b.side_q.difference(&zq).copied().collect();
    let expansion_edges = m
        .owner
        .iter()
        .filter(|(_, p)| x.contains(p))
        .map(|(&q, &p)| (p, q))
        .collect();
    ExpansionResult { x, y, expansion_edges, unsaturated_witness: None }
}

fn check_common(b: &BipartiteView, t: usize) -> Result<(), ExpansionError> {
    if t == 0 {
        return Err(ExpansionError::Precondition("t must be positive".into()));
    }
    if b.side_p.is_empty() || b.side_q.is_empty() {
        return Err(ExpansionError::Precondition("both sides must be non-empty".into()));
    }
    if let Some(q) = b.isolated_q() {
        return Err(ExpansionError::Precondition(format!("{q} is isolated in Q")));
    }
    Ok(())
}

/// Nonempty `X ⊆ P`, `Y ⊆ Q` with a `t`-expansion of `X` into `Y` and no
/// neighbour of `Y` outside `X`. Requires `|Q| >= t|P|` and no isolated
/// vertex in `Q`.
pub fn find_expansion(b: &BipartiteView, t: usize) -> Result<ExpansionResult, ExpansionError> {
    check_common(b, t)?;
    if b.side_q.len() < t * b.side_p.len() {
        return Err(ExpansionError::Precondition(format!(
            "|Q| = {} < {t}|P| = {}",
            b.side_q.len(),
            t * b.side_p.len()
        )));
    }
    let res = extract(b, t);
    match res.check(b, t) {
        Ok(()) => Ok(res),
        Err(e) => {
            let l = maximum_matching(b).len();
            if b.side_q.len() > l * t {
                let mut r = find_matching_expansion_with_witness(b, t)?;
                r.unsaturated_witness = None;
                Ok(r)
            } else {
                Err(e)
            }
        }
    }
}

/// Like [`find_expansion`], but also returns a vertex of `Y` left
/// unsaturated by the expansion. Requires `|Q| > l·t` where `l` is the
/// maximum matching size, and no isolated vertex in `Q`.
///
/// Follows the iterative argument: take an expansion of the current graph;
/// stop if it leaves a `Y` vertex free or some outside `Q` vertex only sees
/// `X`; otherwise bank it, delete it and repeat on the rest.
pub fn find_matching_expansion_with_witness(
    b: &BipartiteView,
    t: usize,
) -> Result<ExpansionResult, ExpansionError> {
    check_common(b, t)?;
    let l = maximum_matching(b).len();
    if b.side_q.len() <= l * t {
        return Err(ExpansionError::Precondition(format!(
            "|Q| = {} <= {t} * matching size {l}",
            b.side_q.len()
        )));
    }

    let mut acc = ExpansionResult::default();
    let mut cur = b.clone();
    loop {
        let step = extract(&cur, t);
        if step.x.is_empty() {
            return Err(ExpansionError::Fault("empty expansion in witness loop".into()));
        }
        step.check(&cur, t)?;
        let mut out = ExpansionResult {
            x: acc.x.union(&step.x).copied().collect(),
            y: acc.y.union(&step.y).copied().collect(),
            expansion_edges: acc.expansion_edges.union(&step.expansion_edges).copied().collect(),
            unsaturated_witness: None,
        };
        if step.y.len() > t * step.x.len() {
            let sat = step.saturated();
            out.unsaturated_witness = step.y.iter().copied().find(|q| !sat.contains(q));
            out.check(b, t)?;
            return Ok(out);
        }
        let cur_q_adj = cur.q_adjacency();
        let lonely = cur
            .side_q
            .difference(&step.y)
            .copied()
            .find(|q| cur_q_adj[q].is_subset(&step.x));
        if let Some(w) = lonely {
            out.y.insert(w);
            out.unsaturated_witness = Some(w);
            out.check(b, t)?;
            return Ok(out);
        }
        let keep_p = cur.side_p.difference(&step.x).copied().collect();
        let keep_q = cur.side_q.difference(&step.y).copied().collect();
        cur = cur.restrict(&keep_p, &keep_q);
        acc = out;
    }
}
