//! Chordal and split structure: elimination orderings, maximal cliques,
//! clique trees, split partitions and highlighted edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordalError {
    #[error("graph is not chordal; induced cycle {0:?}")]
    NotChordal(Vec<Vertex>),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
    #[error("ordering is not a perfect elimination ordering")]
    InvalidOrdering,
    #[error("clique tree check failed: {0}")]
    InvalidCliqueTree(String),
    #[error("edge {0}-{1} does not lie inside the clique side")]
    NotCliqueSideEdge(Vertex, Vertex),
}

/// A vertex ordering in which every vertex's later neighbours form a clique
/// (when the graph is chordal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering {
    pub order: Vec<Vertex>,
}

impl EliminationOrdering {
    fn positions(&self) -> BTreeMap<Vertex, usize> {
        self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }
}

/// Maximum cardinality search. Ties go to the lowest identifier.
/// Returns vertices in visiting order.
fn mcs_visit_order(g: &Graph) -> Vec<Vertex> {
    let mut weight: BTreeMap<Vertex, usize> = g.vertices().map(|v| (v, 0)).collect();
    let mut buckets: Vec<BTreeSet<Vertex>> = vec![g.vertex_set()];
    let mut top = 0usize;
    let mut visited = BTreeSet::new();
    let mut order = Vec::with_capacity(g.vertex_count());

    while order.len() < g.vertex_count() {
        while buckets[top].is_empty() {
            top -= 1;
        }
        let v = buckets[top].pop_first().expect("non-empty bucket");
        visited.insert(v);
        order.push(v);
        for &u in g.neighbors(v) {
            if visited.contains(&u) {
                continue;
            }
            let w = weight.get_mut(&u).expect("known vertex");
            buckets[*w].remove(&u);
            *w += 1;
            if buckets.len() <= *w {
                buckets.push(BTreeSet::new());
            }
            buckets[*w].insert(u);
            top = top.max(*w);
        }
    }
    order
}

/// Checks the perfect-elimination property in `O(n + m)` set operations.
/// On failure returns the offending vertex.
fn check_peo(g: &Graph, peo: &EliminationOrdering) -> Result<(), Vertex> {
    let pos = peo.positions();
    for &v in &peo.order {
        let later: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| pos[u] > pos[&v])
            .collect();
        let Some(&f) = later.iter().min_by_key(|u| pos[u]) else {
            continue;
        };
        let nf = g.neighbors(f);
        if later.iter().any(|&u| u != f && !nf.contains(&u)) {
            return Err(v);
        }
    }
    Ok(())
}

/// A perfect elimination ordering if `g` is chordal, otherwise `None`.
pub fn chordality_order(g: &Graph) -> Option<EliminationOrdering> {
    let mut order = mcs_visit_order(g);
    order.reverse();
    let peo = EliminationOrdering { order };
    check_peo(g, &peo).ok().map(|_| peo)
}

/// Like [`chordality_order`], but on failure returns an induced cycle of
/// length at least four.
pub fn chordality_certificate(g: &Graph) -> Result<EliminationOrdering, Vec<Vertex>> {
    chordality_order(g).ok_or_else(|| {
        induced_long_cycle(g).expect("non-chordal graph has an induced long cycle")
    })
}

/// Some induced cycle of length at least four, or `None` if `g` is chordal.
///
/// A vertex `v` with non-adjacent neighbours `a`, `b` that are joined by a
/// path avoiding the rest of `N[v]` closes such a cycle, and every induced
/// long cycle yields one.
pub fn induced_long_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    for v in g.vertices() {
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        let rest = g.vertex_set().difference(&closed).copied().collect();
        let outside = g.induced(&rest);
        for comp in outside.components() {
            let touch: Vec<Vertex> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|a| comp.iter().any(|c| g.has_edge(*a, *c)))
                .collect();
            for (i, &a) in touch.iter().enumerate() {
                for &b in &touch[i + 1..] {
                    if g.has_edge(a, b) {
                        continue;
                    }
                    let mut blocked = closed.clone();
                    blocked.remove(&a);
                    blocked.remove(&b);
                    let path = g
                        .shortest_path(a, b, &blocked, None)
                        .expect("component touches both ends");
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

/// Every maximal clique, from a perfect elimination ordering.
///
/// The candidate clique of `v` is `v` plus its later neighbours; it is
/// dominated exactly when some `u` has `v` as its first later neighbour and
/// one more later neighbour than `v`. Cliques are returned in reverse
/// ordering position of their defining vertex, which for orderings produced
/// by [`chordality_order`] is search discovery order.
pub fn maximal_cliques(
    g: &Graph,
    peo: &EliminationOrdering,
) -> Result<Vec<BTreeSet<Vertex>>, ChordalError> {
    let pos = peo.positions();
    let covers = peo.order.len() == g.vertex_count()
        && pos.len() == g.vertex_count()
        && pos.keys().all(|v| g.has_vertex(*v));
    if !covers || check_peo(g, peo).is_err() {
        return Err(ChordalError::InvalidOrdering);
    }
    let later = |v: Vertex| -> Vec<Vertex> {
        let mut l: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| pos[u] > pos[&v])
            .collect();
        l.sort_by_key(|u| pos[u]);
        l
    };
    let later_size: BTreeMap<Vertex, usize> =
        peo.order.iter().map(|&v| (v, later(v).len())).collect();
    let mut dominated = BTreeSet::new();
    for &v in &peo.order {
        if let Some(&f) = later(v).first() {
            if later_size[&v] == later_size[&f] + 1 {
                dominated.insert(f);
            }
        }
    }
    let mut cliques = Vec::new();
    for &v in peo.order.iter().rev() {
        if dominated.contains(&v) {
            continue;
        }
        let mut c: BTreeSet<Vertex> = later(v).into_iter().collect();
        c.insert(v);
        cliques.push(c);
    }
    Ok(cliques)
}

/// Tree over the maximal cliques of a connected chordal graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueTree {
    pub nodes: Vec<BTreeSet<Vertex>>,
    /// Each pair is `(earlier, later)` in node index order.
    pub edges: Vec<(usize, usize)>,
}

impl CliqueTree {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    pub fn leaves(&self) -> Vec<usize> {
        if self.nodes.len() == 1 {
            return vec![0];
        }
        self.adjacency()
            .iter()
            .enumerate()
            .filter(|(_, n)| n.len() == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Node indices on the tree path from `a` to `b`, inclusive.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.nodes.len()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Checks tree shape, maximality, coverage and the induced-subtree
    /// property. Together these force every maximal clique to appear.
    pub fn validate(&self, g: &Graph) -> Result<(), ChordalError> {
        let bad = |m: String| Err(ChordalError::InvalidCliqueTree(m));
        let n = self.nodes.len();
        if n == 0 {
            return bad("no nodes".into());
        }
        if self.edges.len() != n - 1 {
            return bad(format!("{} edges for {} nodes", self.edges.len(), n));
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("nodes not connected".into());
        }
        let distinct: BTreeSet<&BTreeSet<Vertex>> = self.nodes.iter().collect();
        if distinct.len() != n {
            return bad("repeated clique".into());
        }
        for (i, c) in self.nodes.iter().enumerate() {
            if !g.is_clique(c) {
                return bad(format!("node {i} is not a clique"));
            }
            let first = *c.iter().next().expect("non-empty clique");
            let extendable = g
                .neighbors(first)
                .iter()
                .any(|&x| !c.contains(&x) && c.iter().all(|&y| g.has_edge(x, y)));
            if extendable {
                return bad(format!("node {i} is not maximal"));
            }
        }
        let mut holders: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.nodes.iter().enumerate() {
            for &v in c {
                holders.entry(v).or_default().push(i);
            }
        }
        if holders.len() != g.vertex_count() {
            return bad("some vertex lies in no node".into());
        }
        for (u, v) in g.edges() {
            if !holders[&u].iter().any(|&i| self.nodes[i].contains(&v)) {
                return bad(format!("edge {u}-{v} lies in no node"));
            }
        }
        for (v, hs) in &holders {
            let inside: BTreeSet<usize> = hs.iter().copied().collect();
            let mut reached = BTreeSet::from([hs[0]]);
            let mut stack = vec![hs[0]];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if inside.contains(&w) && reached.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if reached.len() != inside.len() {
                return bad(format!("nodes holding {v} are not connected"));
            }
        }
        Ok(())
    }
}

/// Clique tree of a connected chordal graph.
///
/// Each maximal clique, in discovery order, is attached to an earlier clique
/// of maximum intersection, lowest index first. The result is validated
/// before it is returned.
pub fn build_clique_tree(g: &Graph) -> Result<CliqueTree, ChordalError> {
    if g.is_empty() {
        return Err(ChordalError::Empty);
    }
    if !g.is_connected() {
        return Err(ChordalError::Disconnected);
    }
    let peo = chordality_certificate(g).map_err(ChordalError::NotChordal)?;
    let nodes = maximal_cliques(g, &peo)?;
    let mut edges = Vec::with_capacity(nodes.len().saturating_sub(1));
    for i in 1..nodes.len() {
        let mut best = (0usize, 0usize);
        for (j, earlier) in nodes[..i].iter().enumerate() {
            let size = earlier.intersection(&nodes[i]).count();
            if size > best.1 {
                best = (j, size);
            }
        }
        edges.push((best.0, i));
    }
    let tree = CliqueTree { nodes, edges };
    tree.validate(g)?;
    Ok(tree)
}

/// A partition into a clique side and an independent side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique_side: BTreeSet<Vertex>,
    pub independent_side: BTreeSet<Vertex>,
}

impl SplitPartition {
    /// Whether the partition is valid for `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.violation(g).is_none()
    }

    /// A pair of vertices breaking the partition: two non-adjacent clique
    /// side vertices, two adjacent independent side vertices, or a vertex
    /// that is misplaced (returned twice).
    pub fn violation(&self, g: &Graph) -> Option<(Vertex, Vertex)> {
        if let Some(&v) = self.clique_side.intersection(&self.independent_side).next() {
            return Some((v, v));
        }
        for v in g.vertices() {
            if !self.clique_side.contains(&v) && !self.independent_side.contains(&v) {
                return Some((v, v));
            }
        }
        for v in self.clique_side.iter().chain(&self.independent_side) {
            if !g.has_vertex(*v) {
                return Some((*v, *v));
            }
        }
        let ks: Vec<Vertex> = self.clique_side.iter().copied().collect();
        for (i, &a) in ks.iter().enumerate() {
            if let Some(&b) = ks[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Some((a, b));
            }
        }
        for &x in &self.independent_side {
            if let Some(&y) = g.neighbors(x).iter().find(|y| self.independent_side.contains(y)) {
                return Some((x.min(y), x.max(y)));
            }
        }
        None
    }
}

/// The degree-sequence candidate: vertices sorted by degree descending then
/// identifier ascending, with the longest prefix satisfying `d_i >= i - 1`
/// on the clique side.
fn split_candidate(g: &Graph) -> (SplitPartition, bool) {
    let mut by_degree: Vec<(usize, Vertex)> = g.vertices().map(|v| (g.degree(v), v)).collect();
    by_degree.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let m = by_degree
        .iter()
        .enumerate()
        .filter(|(i, (d, _))| *d >= *i)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let head: usize = by_degree[..m].iter().map(|p| p.0).sum();
    let tail: usize = by_degree[m..].iter().map(|p| p.0).sum();
    let is_split = head == m * m.saturating_sub(1) + tail;
    let sp = SplitPartition {
        clique_side: by_degree[..m].iter().map(|p| p.1).collect(),
        independent_side: by_degree[m..].iter().map(|p| p.1).collect(),
    };
    (sp, is_split)
}

/// A split partition if `g` is a split graph.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let (sp, is_split) = split_candidate(g);
    if !is_split {
        return None;
    }
    debug_assert!(sp.is_valid_for(g));
    Some(sp)
}

/// For a non-split graph, a pair violating the canonical candidate
/// partition; `None` if `g` is split.
pub fn split_violation(g: &Graph) -> Option<(Vertex, Vertex)> {
    let (sp, is_split) = split_candidate(g);
    if is_split {
        return None;
    }
    Some(sp.violation(g).expect("candidate of a non-split graph is invalid"))
}

/// Whether the clique-side edge `e` has a common independent-side neighbour.
pub fn is_highlighted(g: &Graph, sp: &SplitPartition, e: Edge) -> Result<bool, ChordalError> {
    let (u, v) = e;
    if !sp.clique_side.contains(&u) || !sp.clique_side.contains(&v) || !g.has_edge(u, v) {
        return Err(ChordalError::NotCliqueSideEdge(u, v));
    }
    let nv = g.neighbors(v);
    Ok(g
        .neighbors(u)
        .iter()
        .any(|x| sp.independent_side.contains(x) && nv.contains(x)))
}

/// Simplicial vertices in identifier order.
pub fn simplicial_vertices(g: &Graph) -> Vec<Vertex> {
    g.vertices().filter(|&v| g.is_simplicial(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges(edges.iter().copied()).unwrap()
    }

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    #[test]
    fn chordality_examples() {
        let c4 = g(&[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert!(chordality_order(&c4).is_none());
        let cyc = chordality_certificate(&c4).unwrap_err();
        assert_eq!(set(&cyc), set(&[1, 2, 3, 4]));
        let tree = g(&[(1, 2), (1, 3), (3, 4), (3, 5)]);
        assert!(chordality_order(&tree).is_some());
        let diamond = g(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
        assert!(chordality_order(&diamond).is_some());
    }

    #[test]
    fn clique_examples() {
        let path = g(&[(1, 2), (2, 3)]);
        let mut cs = maximal_cliques(&path, &chordality_order(&path).unwrap()).unwrap();
        cs.sort();
        assert_eq!(cs, vec![set(&[1, 2]), set(&[2, 3])]);
        let k4 = g(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let cs = maximal_cliques(&k4, &chordality_order(&k4).unwrap()).unwrap();
        assert_eq!(cs, vec![set(&[1, 2, 3, 4])]);
        let diamond = g(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
        let mut cs = maximal_cliques(&diamond, &chordality_order(&diamond).unwrap()).unwrap();
        cs.sort();
        assert_eq!(cs, vec![set(&[1, 2, 3]), set(&[1, 2, 4])]);
        let bad = EliminationOrdering { order: vec![1, 2, 3, 4] };
        let c4 = g(&[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert_eq!(maximal_cliques(&c4, &bad), Err(ChordalError::InvalidOrdering));
    }

    #[test]
    fn clique_tree_examples() {
        let k3 = g(&[(1, 2), (2, 3), (1, 3)]);
        let t = build_clique_tree(&k3).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert!(t.edges.is_empty());

        let path = g(&[(1, 2), (2, 3)]);
        let t = build_clique_tree(&path).unwrap();
        assert_eq!(t.nodes.len(), 2);
        assert_eq!(t.edges.len(), 1);

        // central triangle {1,2,3} with a leaf triangle on each edge
        let star = g(&[
            (1, 2), (2, 3), (1, 3),
            (1, 4), (2, 4),
            (2, 5), (3, 5),
            (1, 6), (3, 6),
        ]);
        let t = build_clique_tree(&star).unwrap();
        assert_eq!(t.nodes.len(), 4);
        let centre = t.nodes.iter().position(|c| *c == set(&[1, 2, 3])).unwrap();
        let adj = t.adjacency();
        assert_eq!(adj[centre].len(), 3);

        let c4 = g(&[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert!(matches!(build_clique_tree(&c4), Err(ChordalError::NotChordal(_))));
        let two = g(&[(1, 2), (3, 4)]);
        assert_eq!(build_clique_tree(&two), Err(ChordalError::Disconnected));
    }

    #[test]
    fn split_examples() {
        let k3 = g(&[(1, 2), (2, 3), (1, 3)]);
        let sp = split_partition(&k3).unwrap();
        assert_eq!(sp.clique_side, set(&[1, 2, 3]));
        assert!(sp.independent_side.is_empty());

        let c4 = g(&[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert!(split_partition(&c4).is_none());
        assert!(split_violation(&c4).is_some());

        let star = g(&[(1, 2), (1, 3), (1, 4)]);
        let sp = split_partition(&star).unwrap();
        assert_eq!(sp.clique_side, set(&[1, 2]));
        assert_eq!(sp.independent_side, set(&[3, 4]));
    }

    #[test]
    fn highlighted_examples() {
        // K = {1,2,3}, I = {4,5}, 4 ~ {1,2}, 5 ~ {2,3}
        let h = g(&[(1, 2), (2, 3), (1, 3), (4, 1), (4, 2), (5, 2), (5, 3)]);
        let sp = SplitPartition { clique_side: set(&[1, 2, 3]), independent_side: set(&[4, 5]) };
        assert!(is_highlighted(&h, &sp, (1, 2)).unwrap());
        assert!(is_highlighted(&h, &sp, (2, 3)).unwrap());
        assert!(!is_highlighted(&h, &sp, (1, 3)).unwrap());
        assert_eq!(is_highlighted(&h, &sp, (1, 4)), Err(ChordalError::NotCliqueSideEdge(1, 4)));

        let single = g(&[(1, 2), (3, 1)]);
        let sp = SplitPartition { clique_side: set(&[1, 2]), independent_side: set(&[3]) };
        assert!(!is_highlighted(&single, &sp, (1, 2)).unwrap());
    }
}
