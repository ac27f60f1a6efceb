//! Seeded instance generators. Every family draws all randomness from one
//! ChaCha stream seeded by [`GenSpec::seed`], and vertices are numbered
//! `1..=n`, so equal specs give byte-identical instance files.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Instance, Vertex};
use crate::oracle::{minimum_triangle_hitting_set, vc_to_sfvs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Clique side of `clique_size`, independent side of the rest, each
    /// cross edge with probability `p`.
    SplitRandom,
    /// Grown clique by clique; `p` is the share of the host clique reused.
    ChordalRandom,
    /// The vertex-cover construction applied to `G(n, p)`.
    VcReduction,
    /// Chordal graph with a hidden solution of size `k`; always YES.
    Planted,
    /// Disjoint chordal gadgets needing more than `k` deletions in total,
    /// padded to exactly `n` vertices; always NO.
    PlantedNo,
    /// A terminal-free clique with one four-vertex leaf clique per line
    /// of a small linear design. None of the local branching rules apply.
    LeafCluster,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::SplitRandom,
        Family::ChordalRandom,
        Family::VcReduction,
        Family::Planted,
        Family::PlantedNo,
        Family::LeafCluster,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SplitRandom => "split-random",
            Family::ChordalRandom => "chordal-random",
            Family::VcReduction => "vc-reduction",
            Family::Planted => "planted",
            Family::PlantedNo => "planted-no",
            Family::LeafCluster => "leaf-cluster",
        }
    }

    /// Families whose output is always a split graph.
    pub fn is_split(self) -> bool {
        matches!(self, Family::SplitRandom | Family::VcReduction)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub clique_size: usize,
    pub p: f64,
    pub terminal_fraction: f64,
    pub k: i64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, n: 12, clique_size: 4, p: 0.4, terminal_fraction: 0.5, k: 3, seed }
    }

    fn validate(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::Infeasible(m.to_string()));
        if !(0.0..=1.0).contains(&self.p) {
            return bad("edge probability outside [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.terminal_fraction) {
            return bad("terminal fraction outside [0, 1]");
        }
        if self.k < 0 {
            return bad("negative budget");
        }
        match self.family {
            Family::SplitRandom if self.clique_size > self.n => bad("clique side larger than n"),
            Family::Planted if self.k as usize > self.n => bad("planted solution larger than n"),
            Family::PlantedNo if self.n < GADGET_SIZE * (self.k as usize + 1) => {
                bad("n too small for k + 1 gadgets")
            }
            _ => Ok(()),
        }
    }
}

/// Vertices per gadget in the planted-NO family.
const GADGET_SIZE: usize = 9;

fn clique_edges(g: &mut Graph, vs: &[Vertex]) {
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if !g.has_edge(a, b) {
                g.add_edge(a, b).expect("vertices exist");
            }
        }
    }
}

fn sample_terminals(rng: &mut ChaCha8Rng, vs: impl Iterator<Item = Vertex>, frac: f64) -> BTreeSet<Vertex> {
    vs.filter(|_| rng.gen_bool(frac)).collect()
}

/// Random chordal graph on `first..first+n`: each step picks an earlier
/// clique, keeps a random part of it and adds fresh vertices.
fn grow_chordal(rng: &mut ChaCha8Rng, first: Vertex, n: usize, keep: f64, connected: bool) -> Graph {
    let mut g = Graph::with_vertices(first..first + n);
    if n == 0 {
        return g;
    }
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    let mut next = first;
    let end = first + n;
    while next < end {
        let fresh = rng.gen_range(1..=3).min(end - next);
        let mut members: Vec<Vertex> = (next..next + fresh).collect();
        next += fresh;
        if let Some(host) = cliques.choose(rng) {
            let mut kept: Vec<Vertex> = host.iter().copied().filter(|_| rng.gen_bool(keep)).collect();
            if kept.is_empty() && connected {
                kept.push(*host.choose(rng).expect("cliques are non-empty"));
            }
            members.extend(kept);
        }
        members.sort_unstable();
        clique_edges(&mut g, &members);
        cliques.push(members);
    }
    g
}

fn split_random(rng: &mut ChaCha8Rng, s: &GenSpec) -> Instance {
    let c = s.clique_size;
    let mut g = Graph::with_vertices(1..=s.n);
    let clique: Vec<Vertex> = (1..=c).collect();
    clique_edges(&mut g, &clique);
    for i in c + 1..=s.n {
        for &v in &clique {
            if rng.gen_bool(s.p) {
                g.add_edge(v, i).expect("vertices exist");
            }
        }
    }
    let t = sample_terminals(rng, 1..=s.n, s.terminal_fraction);
    Instance::new(g, t, s.k).expect("terminals drawn from the graph")
}

fn chordal_random(rng: &mut ChaCha8Rng, s: &GenSpec) -> Instance {
    let g = grow_chordal(rng, 1, s.n, s.p, false);
    let t = sample_terminals(rng, 1..=s.n, s.terminal_fraction);
    Instance::new(g, t, s.k).expect("terminals drawn from the graph")
}

fn vc_reduction(rng: &mut ChaCha8Rng, s: &GenSpec) -> Instance {
    let mut g = Graph::with_vertices(1..=s.n);
    for u in 1..=s.n {
        for v in u + 1..=s.n {
            if rng.gen_bool(s.p) {
                g.add_edge(u, v).expect("vertices exist");
            }
        }
    }
    vc_to_sfvs(&g, s.k)
}

/// Terminals are drawn among the hidden solution and among vertices whose
/// neighbourhood outside it is independent, so no terminal triangle
/// survives deleting the hidden set.
fn planted(rng: &mut ChaCha8Rng, s: &GenSpec) -> Instance {
    let g = grow_chordal(rng, 1, s.n, s.p, true);
    let mut order: Vec<Vertex> = (1..=s.n).collect();
    order.shuffle(rng);
    let hidden: BTreeSet<Vertex> = order[..s.k as usize].iter().copied().collect();
    let safe = |v: Vertex| {
        let rest: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|u| !hidden.contains(u)).collect();
        rest.iter().enumerate().all(|(i, &a)| rest[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
    };
    let t: BTreeSet<Vertex> = (1..=s.n)
        .filter(|&v| (hidden.contains(&v) || safe(v)) && rng.gen_bool(s.terminal_fraction.max(0.5)))
        .collect();
    Instance::new(g, t, s.k).expect("terminals drawn from the graph")
}

/// Gadgets are connected chordal graphs with dense terminals; they are
/// added until their minimum deletions sum past `k`, and the remaining
/// vertices form a terminal-free path.
fn planted_no(rng: &mut ChaCha8Rng, s: &GenSpec) -> Result<Instance, GenError> {
    let mut g = Graph::new();
    let mut terminals = BTreeSet::new();
    let mut need = 0i64;
    let mut next: Vertex = 1;
    while need <= s.k {
        if next - 1 + GADGET_SIZE > s.n {
            return Err(GenError::Infeasible(format!("{} vertices do not fit k + 1 gadgets", s.n)));
        }
        let gadget = grow_chordal(rng, next, GADGET_SIZE, 0.8, true);
        let t: BTreeSet<Vertex> = sample_terminals(rng, next..next + GADGET_SIZE, s.terminal_fraction.max(0.5));
        let piece = Instance::new(gadget.clone(), t.clone(), GADGET_SIZE as i64).expect("own vertices");
        let cost = minimum_triangle_hitting_set(&piece, GADGET_SIZE).map_or(0, |h| h.len());
        if cost == 0 {
            continue;
        }
        for v in gadget.vertices() {
            g.add_vertex(v);
        }
        for (a, b) in gadget.edges() {
            g.add_edge(a, b).expect("fresh vertices");
        }
        terminals.extend(t);
        need += cost as i64;
        next += GADGET_SIZE;
    }
    for v in next..=s.n {
        g.add_vertex(v);
        if v > next {
            g.add_edge(v - 1, v).expect("path edge");
        }
    }
    Ok(Instance::new(g, terminals, s.k).expect("terminals drawn from the graph"))
}

const FANO: [[usize; 3]; 7] = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
const AFFINE: [[usize; 3]; 12] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [1, 5, 6],
    [2, 3, 7],
    [0, 5, 7],
    [1, 3, 8],
    [2, 4, 6],
];

/// Keeps a random subset of lines in which every point still lies on at
/// least two lines.
fn thin_lines(rng: &mut ChaCha8Rng, points: usize, lines: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut kept: Vec<[usize; 3]> = lines.to_vec();
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.shuffle(rng);
    for i in order {
        if !rng.gen_bool(0.4) {
            continue;
        }
        let line = lines[i];
        let trial: Vec<[usize; 3]> = kept.iter().copied().filter(|l| *l != line).collect();
        let ok = (0..points).all(|p| trial.iter().filter(|l| l.contains(&p)).count() >= 2);
        if ok && trial.len() >= 3 {
            kept = trial;
        }
    }
    kept
}

fn leaf_cluster(rng: &mut ChaCha8Rng, s: &GenSpec) -> Instance {
    let (points, lines): (usize, Vec<[usize; 3]>) = if rng.gen_bool(0.5) {
        (7, FANO.to_vec())
    } else {
        (9, thin_lines(rng, 9, &AFFINE))
    };
    let total = points + lines.len();
    let mut ids: Vec<Vertex> = (1..=total).collect();
    ids.shuffle(rng);
    let (core, leaves) = ids.split_at(points);
    let mut g = Graph::with_vertices(1..=total);
    clique_edges(&mut g, core);
    let mut t = BTreeSet::new();
    for (line, &leaf) in lines.iter().zip(leaves) {
        for &p in line {
            g.add_edge(leaf, core[p]).expect("vertices exist");
        }
        t.insert(leaf);
    }
    Instance::new(g, t, s.k).expect("terminals drawn from the graph")
}

/// Builds the instance described by `spec`.
pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(match spec.family {
        Family::SplitRandom => split_random(&mut rng, spec),
        Family::ChordalRandom => chordal_random(&mut rng, spec),
        Family::VcReduction => vc_reduction(&mut rng, spec),
        Family::Planted => planted(&mut rng, spec),
        Family::PlantedNo => planted_no(&mut rng, spec)?,
        Family::LeafCluster => leaf_cluster(&mut rng, spec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::{chordality_order, split_partition};
    use crate::io::write_instance;

    #[test]
    fn same_spec_same_bytes() {
        let mut s = GenSpec::new(Family::SplitRandom, 1);
        s.n = 15;
        s.clique_size = 5;
        s.p = 0.3;
        let a = write_instance(&generate(&s).unwrap());
        let b = write_instance(&generate(&s).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn families_have_their_shape() {
        for seed in 0..20 {
            let c = generate(&GenSpec::new(Family::ChordalRandom, seed)).unwrap();
            assert!(chordality_order(&c.graph).is_some());
            let sp = generate(&GenSpec::new(Family::SplitRandom, seed)).unwrap();
            assert!(split_partition(&sp.graph).is_some());
            let vc = generate(&GenSpec::new(Family::VcReduction, seed)).unwrap();
            assert!(split_partition(&vc.graph).is_some());
            let lc = generate(&GenSpec::new(Family::LeafCluster, seed)).unwrap();
            assert!(chordality_order(&lc.graph).is_some());
        }
    }

    #[test]
    fn planted_no_has_exact_size() {
        let mut s = GenSpec::new(Family::PlantedNo, 3);
        s.n = 40;
        s.k = 2;
        assert_eq!(generate(&s).unwrap().graph.vertex_count(), 40);
        s.n = 10;
        assert!(matches!(generate(&s), Err(GenError::Infeasible(_))));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
