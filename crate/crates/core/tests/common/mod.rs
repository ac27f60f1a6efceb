//! Brute-force definitions shared by the integration tests. Nothing here
//! calls the algorithms under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sfvs_core::{Graph, Instance, Vertex};

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::with_vertices(1..=n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Adjacency bitmasks over positions `0..n` in vertex order.
pub fn masks(g: &Graph) -> (Vec<Vertex>, Vec<u32>) {
    let ids: Vec<Vertex> = g.vertices().collect();
    let pos = |v: Vertex| ids.iter().position(|&u| u == v).unwrap();
    let mut adj = vec![0u32; ids.len()];
    for (u, v) in g.edges() {
        adj[pos(u)] |= 1 << pos(v);
        adj[pos(v)] |= 1 << pos(u);
    }
    (ids, adj)
}

fn bits(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

fn connected_within(adj: &[u32], set: u32) -> bool {
    if set == 0 {
        return true;
    }
    let mut seen = 1u32 << set.trailing_zeros();
    loop {
        let grow = bits(seen).fold(seen, |acc, i| acc | (adj[i] & set));
        if grow == seen {
            return seen == set;
        }
        seen = grow;
    }
}

pub fn component_count(g: &Graph) -> usize {
    let (_, adj) = masks(g);
    let n = adj.len();
    let mut left: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut count = 0;
    while left != 0 {
        let mut seen = 1u32 << left.trailing_zeros();
        loop {
            let grow = bits(seen).fold(seen, |acc, i| acc | adj[i]);
            if grow == seen {
                break;
            }
            seen = grow;
        }
        left &= !seen;
        count += 1;
    }
    count
}

/// Some vertex subset of size at least four induces a cycle.
pub fn has_long_induced_cycle(g: &Graph) -> bool {
    let (_, adj) = masks(g);
    let n = adj.len();
    (0u32..1 << n).any(|s| s.count_ones() >= 4 && induces_cycle(&adj, s))
}

fn induces_cycle(adj: &[u32], s: u32) -> bool {
    bits(s).all(|i| (adj[i] & s).count_ones() == 2) && connected_within(adj, s)
}

/// The listed vertices, in order, form an induced cycle of length at least
/// four.
pub fn is_induced_long_cycle(g: &Graph, cyc: &[Vertex]) -> bool {
    let set: BTreeSet<Vertex> = cyc.iter().copied().collect();
    if cyc.len() < 4 || set.len() != cyc.len() {
        return false;
    }
    let k = cyc.len();
    (0..k).all(|i| {
        (0..k).all(|j| {
            let consecutive = (i + 1) % k == j || (j + 1) % k == i;
            i == j || g.has_edge(cyc[i], cyc[j]) == consecutive
        })
    })
}

pub fn is_split_brute(g: &Graph) -> bool {
    let (_, adj) = masks(g);
    let n = adj.len();
    (0u32..1 << n).any(|k| {
        let clique = bits(k).all(|i| adj[i] & k == k & !(1 << i));
        let rest = !k & ((1u32 << n) - 1);
        clique && bits(rest).all(|i| adj[i] & rest == 0)
    })
}

pub fn maximal_cliques_brute(g: &Graph) -> BTreeSet<BTreeSet<Vertex>> {
    let (ids, adj) = masks(g);
    let n = adj.len();
    let is_clique = |s: u32| bits(s).all(|i| adj[i] & s == s & !(1 << i));
    let mut out = BTreeSet::new();
    for s in 1u32..1 << n {
        if is_clique(s) && (0..n).all(|i| s >> i & 1 == 1 || !is_clique(s | 1 << i)) {
            out.insert(bits(s).map(|i| ids[i]).collect());
        }
    }
    out
}

pub fn bridges_brute(g: &Graph) -> BTreeSet<(Vertex, Vertex)> {
    let base = component_count(g);
    g.edges()
        .filter(|&e| component_count(&g.delete_edge(e).unwrap()) > base)
        .collect()
}

/// Some terminal survives on a cycle, found via two neighbours that are
/// still connected once the terminal is removed.
pub fn terminal_on_cycle(inst: &Instance, removed: &BTreeSet<Vertex>) -> bool {
    let g = inst.graph.delete_vertices(removed).unwrap();
    inst.terminals.iter().filter(|t| g.has_vertex(**t)).any(|&t| {
        let without = g.delete_vertices(&BTreeSet::from([t])).unwrap();
        let ns: Vec<Vertex> = g.neighbors(t).iter().copied().collect();
        let comps = without.components();
        let comp_of = |v: Vertex| comps.iter().position(|c| c.contains(&v)).unwrap();
        ns.iter()
            .enumerate()
            .any(|(i, &a)| ns[i + 1..].iter().any(|&b| comp_of(a) == comp_of(b)))
    })
}

/// Minimum vertex cover size over bitmask subsets.
pub fn vertex_cover_brute(g: &Graph) -> usize {
    let (_, adj) = masks(g);
    let n = adj.len();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 1 || adj[i] & !s == 0))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// Maximum bipartite matching size by simple augmenting paths.
pub fn matching_size(p: &[Vertex], edges: &BTreeSet<(Vertex, Vertex)>) -> usize {
    fn augment(
        u: Vertex,
        edges: &BTreeSet<(Vertex, Vertex)>,
        seen: &mut BTreeSet<Vertex>,
        mate: &mut std::collections::BTreeMap<Vertex, Vertex>,
    ) -> bool {
        for &(_, q) in edges.iter().filter(|(a, _)| *a == u) {
            if seen.insert(q) {
                let free = match mate.get(&q) {
                    None => true,
                    Some(&w) => augment(w, edges, seen, mate),
                };
                if free {
                    mate.insert(q, u);
                    return true;
                }
            }
        }
        false
    }
    let mut mate = std::collections::BTreeMap::new();
    p.iter()
        .filter(|&&u| augment(u, edges, &mut BTreeSet::new(), &mut mate))
        .count()
}
