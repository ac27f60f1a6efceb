//! Undirected simple graphs with stable vertex identifiers, and the
//! subset-FVS instance type built on top of them.
//!
//! Adjacency is kept in ordered sets so that every scan over vertices or
//! neighbourhoods happens in identifier order. All rule selection in the
//! kernel and the solver relies on this for reproducible traces.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

/// Vertex identifier. Identifiers are never reused after deletion.
pub type Vertex = usize;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

/// Returns `(min(u, v), max(u, v))`.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(Vertex),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("terminal {0} is not a vertex of the graph")]
    TerminalNotInGraph(Vertex),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on the given vertices with no edges.
    pub fn with_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v);
        }
        g
    }

    /// Builds a graph from an edge list; endpoints are added as vertices.
    pub fn from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(edges: I) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_vertex(u);
            g.add_vertex(v);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `v` if absent. Returns whether it was inserted.
    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.has_vertex(u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        if !self.adj.get_mut(&u).expect("checked").insert(v) {
            let (a, b) = edge(u, v);
            return Err(GraphError::DuplicateEdge(a, b));
        }
        self.adj.get_mut(&v).expect("checked").insert(u);
        Ok(())
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Open neighbourhood of `v`.
    ///
    /// Panics if `v` is not a vertex; every caller in this crate only asks
    /// about vertices it obtained from the graph itself.
    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("neighbors of absent vertex {v}"))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Edges in lexicographic order, each reported once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        let ns = self.adj.remove(&v).ok_or(GraphError::MissingVertex(v))?;
        for u in ns {
            self.adj.get_mut(&u).expect("symmetric adjacency").remove(&v);
        }
        Ok(())
    }

    /// Removes every vertex of `s`. Fails without modifying the graph if
    /// any of them is absent.
    pub fn remove_vertices<'a, I>(&mut self, s: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = &'a Vertex>,
        I::IntoIter: Clone,
    {
        let it = s.into_iter();
        if let Some(&v) = it.clone().find(|v| !self.has_vertex(**v)) {
            return Err(GraphError::MissingVertex(v));
        }
        for &v in it {
            // Duplicates in `s` were already removed on the first pass.
            if self.has_vertex(v) {
                self.remove_vertex(v)?;
            }
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            let (a, b) = edge(u, v);
            return Err(GraphError::MissingEdge(a, b));
        }
        self.adj.get_mut(&u).expect("present").remove(&v);
        self.adj.get_mut(&v).expect("present").remove(&u);
        Ok(())
    }

    /// `G - S` as a new graph.
    pub fn delete_vertices(&self, s: &BTreeSet<Vertex>) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_vertices(s)?;
        Ok(g)
    }

    /// `G - e` as a new graph.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_edge(e.0, e.1)?;
        Ok(g)
    }

    /// Subgraph induced by the vertices of `keep` that exist in the graph.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, ns)| (v, ns.intersection(keep).copied().collect()))
            .collect();
        Graph { adj }
    }

    /// Whether the given vertices are pairwise adjacent.
    pub fn is_clique<'a, I: IntoIterator<Item = &'a Vertex>>(&self, vs: I) -> bool {
        let vs: Vec<Vertex> = vs.into_iter().copied().collect();
        vs.iter().enumerate().all(|(i, &u)| {
            vs[i + 1..].iter().all(|&w| self.has_edge(u, w))
        })
    }

    /// Whether `N[v]` is a clique.
    pub fn is_simplicial(&self, v: Vertex) -> bool {
        self.is_clique(self.neighbors(v))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Shortest path from `from` to `to` (inclusive) in the graph with the
    /// vertices in `blocked` removed and, optionally, one edge ignored.
    pub(crate) fn shortest_path(
        &self,
        from: Vertex,
        to: Vertex,
        blocked: &BTreeSet<Vertex>,
        skip_edge: Option<Edge>,
    ) -> Option<Vec<Vertex>> {
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        parent.insert(from, from);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in self.neighbors(u) {
                if blocked.contains(&w) || parent.contains_key(&w) {
                    continue;
                }
                if skip_edge == Some(edge(u, w)) {
                    continue;
                }
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
        None
    }
}

/// Every edge contained in no cycle of `g`.
///
/// Iterative DFS computing discovery times and low points, so deep path-like
/// graphs do not overflow the stack.
pub fn find_bridges(g: &Graph) -> BTreeSet<Edge> {
    let mut disc: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut low: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut bridges = BTreeSet::new();
    let mut time = 0usize;

    for root in g.vertices() {
        if disc.contains_key(&root) {
            continue;
        }
        // (vertex, parent, neighbour list, next neighbour index)
        let mut stack: Vec<(Vertex, Option<Vertex>, Vec<Vertex>, usize)> = Vec::new();
        disc.insert(root, time);
        low.insert(root, time);
        time += 1;
        stack.push((root, None, g.neighbors(root).iter().copied().collect(), 0));

        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.3 < top.2.len() {
                let w = top.2[top.3];
                top.3 += 1;
                if Some(w) == parent {
                    continue;
                }
                if let Some(&dw) = disc.get(&w) {
                    let lv = low[&v].min(dw);
                    low.insert(v, lv);
                } else {
                    disc.insert(w, time);
                    low.insert(w, time);
                    time += 1;
                    stack.push((w, Some(v), g.neighbors(w).iter().copied().collect(), 0));
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    let lv = low[&v];
                    if lv < low[&p] {
                        low.insert(p, lv);
                    }
                    if lv > disc[&p] {
                        bridges.insert(edge(p, v));
                    }
                }
            }
        }
    }
    bridges
}

/// Three pairwise adjacent vertices, stored in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle(pub Vertex, pub Vertex, pub Vertex);

impl Triangle {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        Triangle(v[0], v[1], v[2])
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        [self.0, self.1, self.2]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v || self.2 == v
    }
}

/// A graph together with a terminal set `T` and a budget `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub terminals: BTreeSet<Vertex>,
    /// May go negative after decrements; a negative budget is a NO instance.
    pub k: i64,
}

impl Instance {
    pub fn new(graph: Graph, terminals: BTreeSet<Vertex>, k: i64) -> Result<Self, GraphError> {
        if let Some(&t) = terminals.iter().find(|&&t| !graph.has_vertex(t)) {
            return Err(GraphError::TerminalNotInGraph(t));
        }
        Ok(Instance { graph, terminals, k })
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        self.terminals.contains(&v)
    }

    /// Deletes `s` from the graph and the terminal set. The budget is left alone.
    pub fn remove_vertices(&mut self, s: &BTreeSet<Vertex>) -> Result<(), GraphError> {
        self.graph.remove_vertices(s)?;
        for v in s {
            self.terminals.remove(v);
        }
        Ok(())
    }

    /// `(G - S, T \ S, k - dk)` as a new instance.
    pub fn minus(&self, s: &BTreeSet<Vertex>, dk: i64) -> Result<Instance, GraphError> {
        let mut out = self.clone();
        out.remove_vertices(s)?;
        out.k -= dk;
        Ok(out)
    }

    pub fn terminal_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| self.terminals.contains(u))
    }
}

/// First triangle through a terminal, scanning terminals and then neighbour
/// pairs in identifier order.
pub fn find_t_triangle(inst: &Instance) -> Option<Triangle> {
    for &t in &inst.terminals {
        let ns: Vec<Vertex> = inst.graph.neighbors(t).iter().copied().collect();
        for (i, &u) in ns.iter().enumerate() {
            let nu = inst.graph.neighbors(u);
            if let Some(&w) = ns[i + 1..].iter().find(|w| nu.contains(w)) {
                return Some(Triangle::new(t, u, w));
            }
        }
    }
    None
}

/// All triangles containing at least one terminal, sorted and deduplicated.
pub fn t_triangles(inst: &Instance) -> Vec<Triangle> {
    let mut out = BTreeSet::new();
    for &t in &inst.terminals {
        let ns: Vec<Vertex> = inst.graph.neighbors(t).iter().copied().collect();
        for (i, &u) in ns.iter().enumerate() {
            let nu = inst.graph.neighbors(u);
            for &w in &ns[i + 1..] {
                if nu.contains(&w) {
                    out.insert(Triangle::new(t, u, w));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// A cycle through some terminal, as its vertex sequence starting at the
/// terminal, or `None` if the instance is a T-forest.
///
/// A vertex lies on a cycle exactly when one of its incident edges is not a
/// bridge; the cycle is closed with a shortest path that avoids that edge.
pub fn find_t_cycle(inst: &Instance) -> Option<Vec<Vertex>> {
    let bridges = find_bridges(&inst.graph);
    let empty = BTreeSet::new();
    for &t in &inst.terminals {
        for &u in inst.graph.neighbors(t) {
            if bridges.contains(&edge(t, u)) {
                continue;
            }
            let path = inst
                .graph
                .shortest_path(u, t, &empty, Some(edge(t, u)))
                .expect("a non-bridge edge lies on a cycle");
            let mut cycle = vec![t];
            cycle.extend(path.into_iter().take_while(|&w| w != t));
            return Some(cycle);
        }
    }
    None
}

/// True iff no cycle of the graph passes through a terminal.
pub fn is_t_forest(inst: &Instance) -> bool {
    find_t_cycle(inst).is_none()
}

/// Whether deleting `s` from the instance leaves a T-forest.
pub fn is_solution(inst: &Instance, s: &BTreeSet<Vertex>) -> Result<bool, GraphError> {
    Ok(is_t_forest(&inst.minus(s, 0)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges(edges.iter().copied()).unwrap()
    }

    fn inst(edges: &[(Vertex, Vertex)], t: &[Vertex], k: i64) -> Instance {
        Instance::new(g(edges), t.iter().copied().collect(), k).unwrap()
    }

    #[test]
    fn bridges_on_small_graphs() {
        let path = g(&[(1, 2), (2, 3)]);
        assert_eq!(find_bridges(&path), BTreeSet::from([(1, 2), (2, 3)]));
        let tri = g(&[(1, 2), (2, 3), (1, 3)]);
        assert!(find_bridges(&tri).is_empty());
        let pendant = g(&[(1, 2), (2, 3), (1, 3), (3, 4)]);
        assert_eq!(find_bridges(&pendant), BTreeSet::from([(3, 4)]));
    }

    #[test]
    fn t_triangle_lookup() {
        let i = inst(&[(1, 2), (2, 3), (1, 3)], &[1], 1);
        assert_eq!(find_t_triangle(&i), Some(Triangle(1, 2, 3)));
        let i = inst(&[(1, 2), (2, 3), (1, 3)], &[], 1);
        assert_eq!(find_t_triangle(&i), None);
        // K4 with terminal 1: three triangles through it
        let k4 = inst(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], &[1], 1);
        let tri = find_t_triangle(&k4).unwrap();
        assert!(tri.contains(1));
        assert_eq!(t_triangles(&k4).len(), 3);
    }

    #[test]
    fn t_forest_checks() {
        let c4 = [(1, 2), (2, 3), (3, 4), (4, 1)];
        assert!(!is_t_forest(&inst(&c4, &[1], 0)));
        assert!(is_t_forest(&inst(&c4, &[], 0)));
        let mut i = inst(&[(1, 2), (2, 3), (1, 3)], &[], 0);
        i.graph.add_vertex(9);
        i.terminals.insert(9);
        assert!(is_t_forest(&i));
        let cyc = find_t_cycle(&inst(&c4, &[3], 0)).unwrap();
        assert_eq!(cyc[0], 3);
        assert_eq!(cyc.len(), 4);
    }

    #[test]
    fn deletions() {
        let k3 = g(&[(1, 2), (2, 3), (1, 3)]);
        let minus_v = k3.delete_vertices(&BTreeSet::from([3])).unwrap();
        assert_eq!(minus_v.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        let minus_e = k3.delete_edge((1, 3)).unwrap();
        assert_eq!(minus_e.edge_count(), 2);
        assert_eq!(find_bridges(&minus_e).len(), 2);
        assert_eq!(k3.delete_vertices(&BTreeSet::new()).unwrap(), k3);
        assert_eq!(
            k3.delete_vertices(&BTreeSet::from([7])),
            Err(GraphError::MissingVertex(7))
        );
        assert_eq!(k3.delete_edge((1, 7)), Err(GraphError::MissingEdge(1, 7)));
    }

    #[test]
    fn construction_errors() {
        let mut h = Graph::with_vertices([1, 2]);
        assert_eq!(h.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        h.add_edge(1, 2).unwrap();
        assert_eq!(h.add_edge(2, 1), Err(GraphError::DuplicateEdge(1, 2)));
        assert_eq!(h.add_edge(1, 5), Err(GraphError::MissingVertex(5)));
        assert_eq!(
            Instance::new(h, BTreeSet::from([4]), 0),
            Err(GraphError::TerminalNotInGraph(4))
        );
    }

    #[test]
    fn components_are_sorted_by_min_vertex() {
        let mut h = g(&[(5, 6), (1, 9), (2, 3)]);
        h.add_vertex(4);
        assert_eq!(
            h.components(),
            vec![vec![1, 9], vec![2, 3], vec![4], vec![5, 6]]
        );
    }
}
