//! Minimal bipartite-graph interface shared by the torus and by small
//! hand-built graphs used in tests.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Inline storage for neighbor lists; torus degrees up to 2d = 16 fit.
pub type Neighbors = SmallVec<[usize; 16]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A finite simple graph with a proper 2-coloring into Even/Odd classes.
pub trait BipartiteGraph {
    fn vertex_count(&self) -> usize;

    fn parity(&self, v: usize) -> Parity;

    fn neighbors(&self, v: usize) -> Neighbors;

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Common degree when the graph is regular.
    fn regular_degree(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        let first = self.degree(0);
        (1..n).all(|v| self.degree(v) == first).then_some(first)
    }

    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(&v)
    }
}

/// Adjacency-list graph with an explicit parity labelling.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
    parity: Vec<Parity>,
}

impl SimpleGraph {
    /// Builds a graph from an edge list. Panics if an edge joins two
    /// vertices of the same parity, since the contour machinery assumes a
    /// proper bipartition.
    pub fn new(parity: Vec<Parity>, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); parity.len()];
        for &(u, v) in edges {
            assert_ne!(parity[u], parity[v], "edge ({u}, {v}) is not bipartite");
            if !adjacency[u].contains(&v) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        SimpleGraph { adjacency, parity }
    }

    /// The path or cycle on `n` vertices with alternating parity.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 4 && n.is_multiple_of(2));
        let parity = (0..n)
            .map(|i| {
                if i % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            })
            .collect();
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(parity, &edges)
    }
}

impl BipartiteGraph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn parity(&self, v: usize) -> Parity {
        self.parity[v]
    }

    fn neighbors(&self, v: usize) -> Neighbors {
        self.adjacency[v].iter().copied().collect()
    }
}

/// Outer boundary: vertices outside `set` adjacent to something in it.
pub fn external_boundary<G: BipartiteGraph + ?Sized>(g: &G, set: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.vertex_count());
    for v in set.ones() {
        for u in g.neighbors(v) {
            if !set.contains(u) {
                out.insert(u);
            }
        }
    }
    out
}

/// Inner boundary: vertices of `set` adjacent to something outside it.
pub fn internal_boundary<G: BipartiteGraph + ?Sized>(g: &G, set: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.vertex_count());
    for v in set.ones() {
        if g.neighbors(v).iter().any(|&u| !set.contains(u)) {
            out.insert(v);
        }
    }
    out
}

/// `X ∪ ∂_ext X`.
pub fn closed_neighborhood<G: BipartiteGraph + ?Sized>(g: &G, set: &FixedBitSet) -> FixedBitSet {
    let mut out = external_boundary(g, set);
    out.union_with(set);
    out
}

/// Number of neighbors of `v` inside `set`.
pub fn degree_into<G: BipartiteGraph + ?Sized>(g: &G, v: usize, set: &FixedBitSet) -> usize {
    g.neighbors(v).iter().filter(|&&u| set.contains(u)).count()
}

/// Edge boundary `∇(X)` as pairs `(inside, outside)`.
pub fn edge_boundary<G: BipartiteGraph + ?Sized>(g: &G, set: &FixedBitSet) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for v in set.ones() {
        for u in g.neighbors(v) {
            if !set.contains(u) {
                edges.push((v, u));
            }
        }
    }
    edges
}

/// Connected components of the subgraph induced by `set`, each listed in
/// order of its smallest vertex.
pub fn induced_components<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &FixedBitSet,
) -> Vec<FixedBitSet> {
    let n = g.vertex_count();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in set.ones() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = FixedBitSet::with_capacity(n);
        seen.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            comp.insert(v);
            for u in g.neighbors(v) {
                if set.contains(u) && !seen.contains(u) {
                    seen.insert(u);
                    queue.push_back(u);
                }
            }
        }
        components.push(comp);
    }
    components
}

pub fn is_connected<G: BipartiteGraph + ?Sized>(g: &G, set: &FixedBitSet) -> bool {
    set.count_ones(..) > 0 && induced_components(g, set).len() == 1
}

/// Vertices of the given parity within `set`.
pub fn restrict_parity<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &FixedBitSet,
    parity: Parity,
) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.vertex_count());
    out.extend(set.ones().filter(|&v| g.parity(v) == parity));
    out
}

/// All vertices of one parity class.
pub fn parity_class<G: BipartiteGraph + ?Sized>(g: &G, parity: Parity) -> FixedBitSet {
    let n = g.vertex_count();
    let mut out = FixedBitSet::with_capacity(n);
    out.extend((0..n).filter(|&v| g.parity(v) == parity));
    out
}

pub fn complement(set: &FixedBitSet) -> FixedBitSet {
    let mut out = set.clone();
    out.toggle_range(..);
    out
}

pub fn bitset_from<I: IntoIterator<Item = usize>>(n: usize, items: I) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n);
    out.extend(items);
    out
}
