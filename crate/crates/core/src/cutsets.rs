//! Contours of an independent set: occupied regions, the minimal edge
//! cutsets around them, the even/odd dichotomy and the family Γ(I).
//!
//! For a parity class P and an independent set I, the regions are the
//! components R of `(I^P)^+`. Each component C of the complement of R
//! yields a cutset γ = ∇(C) with W = V∖C. The interior is the smaller of
//! W and C (W on ties), and γ is enveloping when the interior is W.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    closed_neighborhood, complement, degree_into, edge_boundary, external_boundary,
    induced_components, internal_boundary, is_connected, restrict_parity, BipartiteGraph, Parity,
};
use crate::hardcore::{require_independent, OccupancySet};
use crate::torus::TorusGraph;

/// A minimal edge cutset `∇(C)`, with its two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cutset {
    /// Edges as `(endpoint in W, endpoint in C)`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub w: FixedBitSet,
    pub c: FixedBitSet,
    /// The region the cutset was built from; empty for hand-built cutsets.
    pub region: FixedBitSet,
    /// Parity class whose occupied vertices generated the region.
    pub parity: Parity,
    pub enveloping: bool,
}

impl Cutset {
    /// Cutset separating `w` from its complement, without a generating
    /// region. Used for checking arbitrary candidate contours.
    pub fn from_sides<G: BipartiteGraph + ?Sized>(
        g: &G,
        w: FixedBitSet,
        parity: Parity,
    ) -> Result<Self> {
        if w.len() != g.vertex_count() {
            return Err(Error::SizeMismatch {
                expected: g.vertex_count(),
                found: w.len(),
            });
        }
        let c = complement(&w);
        Ok(Self::build(
            g,
            FixedBitSet::with_capacity(g.vertex_count()),
            w,
            c,
            parity,
        ))
    }

    fn build<G: BipartiteGraph + ?Sized>(
        g: &G,
        region: FixedBitSet,
        w: FixedBitSet,
        c: FixedBitSet,
        parity: Parity,
    ) -> Self {
        let mut edges = edge_boundary(g, &w);
        edges.sort_unstable();
        let enveloping = w.count_ones(..) <= c.count_ones(..);
        Cutset {
            edges,
            w,
            c,
            region,
            parity,
            enveloping,
        }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// `ant γ`: the smaller side, W on ties.
    pub fn interior(&self) -> &FixedBitSet {
        if self.enveloping {
            &self.w
        } else {
            &self.c
        }
    }

    /// Number of vertices of W in the given parity class.
    pub fn w_count<G: BipartiteGraph + ?Sized>(&self, g: &G, parity: Parity) -> usize {
        self.w.ones().filter(|&v| g.parity(v) == parity).count()
    }

    /// `(w_e, w_o)`.
    pub fn w_counts<G: BipartiteGraph + ?Sized>(&self, g: &G) -> (usize, usize) {
        (self.w_count(g, Parity::Even), self.w_count(g, Parity::Odd))
    }
}

/// Components of `(I^P)^+ = I^P ∪ ∂_ext I^P`, ordered by smallest vertex.
pub fn occupied_regions<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &OccupancySet,
    parity: Parity,
) -> Result<Vec<FixedBitSet>> {
    require_independent(g, set)?;
    let occupied = restrict_parity(g, set.bits(), parity);
    Ok(induced_components(g, &closed_neighborhood(g, &occupied)))
}

/// One cutset per component of the complement of the connected region `R`.
pub fn cutsets_of_region<G: BipartiteGraph + ?Sized>(
    g: &G,
    region: &FixedBitSet,
    parity: Parity,
) -> Result<Vec<Cutset>> {
    if region.len() != g.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: g.vertex_count(),
            found: region.len(),
        });
    }
    if !is_connected(g, region) {
        return Err(Error::Precondition(
            "region is empty or disconnected".into(),
        ));
    }
    let outside = complement(region);
    if outside.is_clear() {
        return Err(Error::Precondition("region covers every vertex".into()));
    }
    Ok(induced_components(g, &outside)
        .into_iter()
        .map(|c| {
            let w = complement(&c);
            Cutset::build(g, region.clone(), w, c, parity)
        })
        .collect())
}

fn enveloping_cutset<G: BipartiteGraph + ?Sized>(
    g: &G,
    region: &FixedBitSet,
    parity: Parity,
) -> Result<Option<Cutset>> {
    if complement(region).is_clear() {
        return Ok(None);
    }
    Ok(cutsets_of_region(g, region, parity)?
        .into_iter()
        .find(|c| c.enveloping))
}

/// Which of Even/Odd apply to `I`: P applies when every P-region has an
/// enveloping cutset. At least one always applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityLabels {
    pub even: bool,
    pub odd: bool,
}

impl ParityLabels {
    pub fn contains(&self, parity: Parity) -> bool {
        match parity {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }
}

fn is_of_parity<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &OccupancySet,
    parity: Parity,
) -> Result<bool> {
    for region in occupied_regions(g, set, parity)? {
        if enveloping_cutset(g, &region, parity)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn classify_even_odd<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &OccupancySet,
) -> Result<ParityLabels> {
    Ok(ParityLabels {
        even: is_of_parity(g, set, Parity::Even)?,
        odd: is_of_parity(g, set, Parity::Odd)?,
    })
}

/// Γ(I): enveloping cutsets of the P-regions whose interiors are maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContourFamily {
    pub cutsets: Vec<Cutset>,
    pub parity: Parity,
}

impl ContourFamily {
    pub fn len(&self) -> usize {
        self.cutsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cutsets.is_empty()
    }
}

/// Γ(I) for the Even decomposition.
pub fn gamma_family<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &OccupancySet,
) -> Result<ContourFamily> {
    gamma_family_for(g, set, Parity::Even)
}

pub fn gamma_family_for<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &OccupancySet,
    parity: Parity,
) -> Result<ContourFamily> {
    let mut all = Vec::new();
    for region in occupied_regions(g, set, parity)? {
        match enveloping_cutset(g, &region, parity)? {
            Some(c) => all.push(c),
            None => {
                return Err(Error::Precondition(format!(
                    "set is not {}: a region has no enveloping cutset",
                    match parity {
                        Parity::Even => "even",
                        Parity::Odd => "odd",
                    }
                )))
            }
        }
    }
    let keep: Vec<bool> = (0..all.len())
        .map(|i| {
            (0..all.len())
                .all(|j| j == i || all[j].w.is_subset(&all[i].w) || all[j].w.is_disjoint(&all[i].w))
        })
        .collect();
    let cutsets = all
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();
    Ok(ContourFamily { cutsets, parity })
}

/// Outcome of one property check, with a vertex witnessing failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl Check {
    fn from_witness(witness: Option<usize>) -> Self {
        Check {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// The four structural properties of a family cutset, relative to its
/// generating parity P (written here for P = Even):
/// 2. `∂_int W ⊆ O` and `∂_ext W ⊆ E`;
/// 3. neither boundary layer meets I;
/// 4. every `x ∈ ∂_int W` has an occupied neighbor in W;
/// 5. `W^O = ∂_ext W^E` and `W^E = {y ∈ E : ∂y ⊆ W^O}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContourReport {
    pub boundary_parity: Check,
    pub boundary_unoccupied: Check,
    pub boundary_supported: Check,
    pub odd_part_closed: Check,
}

impl ContourReport {
    pub fn all_hold(&self) -> bool {
        self.boundary_parity.holds
            && self.boundary_unoccupied.holds
            && self.boundary_supported.holds
            && self.odd_part_closed.holds
    }
}

pub fn verify_contour_properties<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &OccupancySet,
    gamma: &Cutset,
) -> ContourReport {
    let p = gamma.parity;
    let q = p.flip();
    let w = &gamma.w;
    let inner = internal_boundary(g, w);
    let outer = external_boundary(g, w);

    let boundary_parity = Check::from_witness(
        inner
            .ones()
            .find(|&x| g.parity(x) != q)
            .or_else(|| outer.ones().find(|&x| g.parity(x) != p)),
    );
    let boundary_unoccupied =
        Check::from_witness(inner.ones().chain(outer.ones()).find(|&x| set.contains(x)));
    let boundary_supported = Check::from_witness(inner.ones().find(|&x| {
        !g.neighbors(x)
            .iter()
            .any(|&y| w.contains(y) && set.contains(y))
    }));

    let w_p = restrict_parity(g, w, p);
    let w_q = restrict_parity(g, w, q);
    let mut closure = external_boundary(g, &w_p);
    closure.symmetric_difference_with(&w_q);
    let mut witness = closure.ones().next();
    if witness.is_none() {
        witness = (0..g.vertex_count()).find(|&y| {
            g.parity(y) == p && w_p.contains(y) != g.neighbors(y).iter().all(|&u| w_q.contains(u))
        });
    }
    ContourReport {
        boundary_parity,
        boundary_unoccupied,
        boundary_supported,
        odd_part_closed: Check::from_witness(witness),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeIdentity {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `|γ| = Δ(|W^Q| − |W^P|)` for a Δ-regular graph, where P is the
/// generating parity and Q the other class.
pub fn size_identity<G: BipartiteGraph + ?Sized>(g: &G, gamma: &Cutset) -> Result<SizeIdentity> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("graph is not regular".into()))? as i64;
    let wp = gamma.w_count(g, gamma.parity) as i64;
    let wq = gamma.w_count(g, gamma.parity.flip()) as i64;
    let lhs = gamma.size() as i64;
    let rhs = degree * (wq - wp);
    Ok(SizeIdentity {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

const RELATIVE_SLACK: f64 = 1e-9;

fn bound_check(value: f64, bound: f64) -> BoundCheck {
    BoundCheck {
        value,
        bound,
        holds: value >= bound * (1.0 - RELATIVE_SLACK),
    }
}

/// `|γ| ≥ |W|^{1−1/d}`.
pub fn volume_bound(gamma: &Cutset, dim: usize) -> BoundCheck {
    let w = gamma.w.count_ones(..) as f64;
    bound_check(gamma.size() as f64, w.powf(1.0 - 1.0 / dim as f64))
}

/// `|γ| ≥ d^{1.9}`: an asymptotic statement, reported only.
pub fn large_dimension_bound(gamma: &Cutset, dim: usize) -> BoundCheck {
    bound_check(gamma.size() as f64, (dim as f64).powf(1.9))
}

/// Both boundaries of `A` against `min_{r=1..d} 2|A|^{1−1/r} r L^{d/r−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IsoperimetryCheck {
    /// `|∂_ext A|`.
    pub boundary: usize,
    /// `|∇(A)|`.
    pub edge_boundary: usize,
    pub bound: f64,
    /// `|∂_ext A| ≥ bound`.
    pub holds: bool,
    /// `|∇(A)| ≥ bound`.
    pub edge_holds: bool,
}

/// Compares `|∂_ext A|` and `|∇(A)|` with the torus isoperimetric bound,
/// for `|A| ≤ L^d/2`. The vertex form can fail on small tori (e.g.
/// `A = {0, 1, 3, 4}` on `T_{4,2}` has 7 outer neighbors against a bound
/// of 8); the edge form is the theorem.
pub fn isoperimetry_check(g: &TorusGraph, set: &FixedBitSet) -> Result<IsoperimetryCheck> {
    if set.len() != g.len() {
        return Err(Error::SizeMismatch {
            expected: g.len(),
            found: set.len(),
        });
    }
    let size = set.count_ones(..);
    if 2 * size > g.len() {
        return Err(Error::Precondition(format!(
            "|A| = {size} exceeds half of {} vertices",
            g.len()
        )));
    }
    let boundary = external_boundary(g, set).count_ones(..);
    let edges = edge_boundary(g, set).len();
    let bound = if size == 0 {
        0.0
    } else {
        let (a, l, d) = (size as f64, g.side() as f64, g.dim() as f64);
        (1..=g.dim())
            .map(|r| {
                let r = r as f64;
                2.0 * a.powf(1.0 - 1.0 / r) * r * l.powf(d / r - 1.0)
            })
            .fold(f64::INFINITY, f64::min)
    };
    Ok(IsoperimetryCheck {
        boundary,
        edge_boundary: edges,
        bound,
        holds: bound_check(boundary as f64, bound).holds,
        edge_holds: bound_check(edges as f64, bound).holds,
    })
}

/// `G_γ`: nodes are the edges of γ; two are adjacent when they share
/// exactly one endpoint and are not parallel, or when their endpoints
/// span a 4-cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    /// Node indices of each component, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut part = Vec::new();
            while let Some(i) = stack.pop() {
                part.push(i);
                for &j in &self.adjacency[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

fn dual_adjacent(g: &TorusGraph, e: (usize, usize), f: (usize, usize)) -> bool {
    let (a, b) = e;
    let (c, d) = f;
    let shared = [a == c, a == d, b == c, b == d]
        .iter()
        .filter(|&&x| x)
        .count();
    if shared == 1 {
        return g.edge_axis(a, b) != g.edge_axis(c, d);
    }
    if shared == 0 {
        return (g.is_adjacent(a, c) && g.is_adjacent(b, d))
            || (g.is_adjacent(a, d) && g.is_adjacent(b, c));
    }
    false
}

pub fn dual_graph(g: &TorusGraph, edges: &[(usize, usize)]) -> DualGraph {
    let n = edges.len();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if dual_adjacent(g, edges[i], edges[j]) {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    DualGraph {
        nodes: edges.to_vec(),
        adjacency,
    }
}

/// A cutset is trivial when its dual graph is connected.
pub fn is_trivial(g: &TorusGraph, gamma: &Cutset) -> bool {
    dual_graph(g, &gamma.edges).is_connected()
}

/// 2-components of `∂_int W` against the component structure of `G_γ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoComponentReport {
    pub boundary_size: usize,
    pub two_component_sizes: Vec<usize>,
    pub dual_component_sizes: Vec<usize>,
    pub trivial: bool,
    /// `G_γ` connected implies `∂_int W` is 2-clustered.
    pub trivial_implies_clustered: bool,
    /// Non-trivial: every dual component has at least `L^{d−1}` edges.
    pub dual_components_large: bool,
    /// Non-trivial: every 2-component has at least `L^{d−1}/2d` vertices.
    pub two_components_large: bool,
}

pub fn two_component_structure(g: &TorusGraph, gamma: &Cutset) -> Result<TwoComponentReport> {
    let boundary: Vec<usize> = internal_boundary(g, &gamma.w).ones().collect();
    if boundary.is_empty() {
        return Err(Error::InvariantViolation(
            "inner boundary of W is empty".into(),
        ));
    }
    let two = g.k_components(&boundary, 2)?;
    let dual = dual_graph(g, &gamma.edges).components();
    let trivial = dual.len() == 1;
    let two_component_sizes: Vec<usize> = two.iter().map(Vec::len).collect();
    let dual_component_sizes: Vec<usize> = dual.iter().map(Vec::len).collect();
    let slab = (g.side() as f64).powi(g.dim() as i32 - 1);
    Ok(TwoComponentReport {
        boundary_size: boundary.len(),
        trivial,
        trivial_implies_clustered: !trivial || two.len() == 1,
        dual_components_large: trivial || dual_component_sizes.iter().all(|&s| s as f64 >= slab),
        two_components_large: two.len() == 1
            || two_component_sizes
                .iter()
                .all(|&s| s as f64 >= slab / (2 * g.dim()) as f64),
        two_component_sizes,
        dual_component_sizes,
    })
}

/// `(|γ_i|, v_i)` pairs.
pub type ProfileVector = Vec<(usize, usize)>;

/// Profile of the selected cutsets, each paired with a witness vertex in
/// the generating-parity part of its interior.
pub fn profile_of<G: BipartiteGraph + ?Sized>(
    g: &G,
    family: &ContourFamily,
    selector: &[usize],
    witnesses: &[usize],
) -> Result<ProfileVector> {
    if selector.len() != witnesses.len() {
        return Err(Error::SizeMismatch {
            expected: selector.len(),
            found: witnesses.len(),
        });
    }
    selector
        .iter()
        .zip(witnesses)
        .map(|(&i, &v)| {
            let gamma = family.cutsets.get(i).ok_or_else(|| {
                Error::Precondition(format!("no cutset {i} in family of {}", family.len()))
            })?;
            if v >= g.vertex_count()
                || !gamma.interior().contains(v)
                || g.parity(v) != family.parity
            {
                return Err(Error::Precondition(format!(
                    "witness {v} is not in the interior of cutset {i} with the family parity"
                )));
            }
            Ok((gamma.size(), v))
        })
        .collect()
}

/// `i` with `2^{i−1} ≤ size < 2^i`.
pub fn size_bucket(size: usize) -> u32 {
    usize::BITS - size.leading_zeros()
}

/// Dyadic buckets `Γ_i = {γ : 2^{i−1} ≤ |γ| < 2^i}`.
pub fn size_buckets(family: &ContourFamily) -> BTreeMap<u32, Vec<&Cutset>> {
    let mut out: BTreeMap<u32, Vec<&Cutset>> = BTreeMap::new();
    for c in &family.cutsets {
        out.entry(size_bucket(c.size())).or_default().push(c);
    }
    out
}

/// Inner-boundary vertices of W that have at most `d` neighbors in the
/// generating-parity part of W; and the analogue for C.
pub fn sparse_boundaries(g: &TorusGraph, gamma: &Cutset) -> (FixedBitSet, FixedBitSet) {
    let p = gamma.parity;
    let w_p = restrict_parity(g, &gamma.w, p);
    let c_q = restrict_parity(g, &gamma.c, p.flip());
    let d = g.dim();
    let mut w_part = internal_boundary(g, &gamma.w);
    let mut c_part = internal_boundary(g, &gamma.c);
    let keep_w: Vec<usize> = w_part
        .ones()
        .filter(|&x| degree_into(g, x, &w_p) <= d)
        .collect();
    let keep_c: Vec<usize> = c_part
        .ones()
        .filter(|&x| degree_into(g, x, &c_q) <= d)
        .collect();
    w_part.clear();
    w_part.extend(keep_w);
    c_part.clear();
    c_part.extend(keep_c);
    (w_part, c_part)
}

/// `count` even independent sets drawn by independent Glauber runs from
/// the empty set, replica `r` using activity `lambdas[r % len]`. Runs
/// whose final state is not even are skipped.
pub fn sample_even_sets(
    g: &TorusGraph,
    count: usize,
    seed: u64,
    lambdas: &[f64],
    burn_in: u64,
) -> Result<Vec<OccupancySet>> {
    if lambdas.is_empty() {
        return Err(Error::Precondition("no activities given".into()));
    }
    let max_attempts = 50 * count as u64 + 50;
    let mut out = Vec::with_capacity(count);
    let mut replica = 0u64;
    while out.len() < count {
        if replica == max_attempts {
            return Err(Error::BudgetExceeded(format!(
                "found {} even sets in {max_attempts} runs",
                out.len()
            )));
        }
        let lambda = lambdas[replica as usize % lambdas.len()];
        let set = crate::glauber::sample_from_empty(g, lambda, seed, replica, burn_in)?;
        if is_of_parity(g, &set, Parity::Even)? {
            out.push(set);
        }
        replica += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bitset_from, SimpleGraph};

    fn t(l: usize, d: usize) -> TorusGraph {
        TorusGraph::new(l, d).unwrap()
    }

    fn set(g: &TorusGraph, coords: &[&[usize]]) -> OccupancySet {
        OccupancySet::from_vertices(g, coords.iter().map(|c| g.index(c).unwrap())).unwrap()
    }

    #[test]
    fn empty_set_has_no_regions() {
        let g = t(4, 2);
        let e = OccupancySet::empty(16);
        assert!(occupied_regions(&g, &e, Parity::Even).unwrap().is_empty());
        assert_eq!(
            classify_even_odd(&g, &e).unwrap(),
            ParityLabels {
                even: true,
                odd: true
            }
        );
        assert!(gamma_family(&g, &e).unwrap().is_empty());
    }

    #[test]
    fn single_vertex_contour() {
        let g = t(4, 2);
        let i = set(&g, &[&[0, 0]]);
        let regions = occupied_regions(&g, &i, Parity::Even).unwrap();
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].count_ones(..), 5);
        let cuts = cutsets_of_region(&g, &regions[0], Parity::Even).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].size(), 12);
        assert!(cuts[0].enveloping);
        assert_eq!(cuts[0].w_counts(&g), (1, 4));
        assert_eq!(
            classify_even_odd(&g, &i).unwrap(),
            ParityLabels {
                even: true,
                odd: true
            }
        );
        let fam = gamma_family(&g, &i).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(fam.cutsets[0].interior().contains(0));
        let id = size_identity(&g, &fam.cutsets[0]).unwrap();
        assert_eq!((id.lhs, id.rhs, id.holds), (12, 12, true));
        assert!(verify_contour_properties(&g, &i, &fam.cutsets[0]).all_hold());
    }

    #[test]
    fn far_apart_vertices_give_two_regions() {
        let g = t(8, 2);
        let i = set(&g, &[&[0, 0], &[4, 0]]);
        assert_eq!(occupied_regions(&g, &i, Parity::Even).unwrap().len(), 2);
        let near = set(&g, &[&[0, 0], &[2, 0]]);
        assert_eq!(occupied_regions(&g, &near, Parity::Even).unwrap().len(), 1);
    }

    #[test]
    fn region_covering_everything_is_rejected() {
        let g = t(4, 2);
        let all = complement(&FixedBitSet::with_capacity(16));
        assert!(cutsets_of_region(&g, &all, Parity::Even).is_err());
    }

    #[test]
    fn ring_region_has_two_complement_components() {
        // A single wrapping column leaves a connected complement.
        let g = t(6, 2);
        let band: Vec<usize> = (0..36).filter(|&v| g.coord(v, 0) == 1).collect();
        let region = bitset_from(36, band);
        let cuts = cutsets_of_region(&g, &region, Parity::Even).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].size(), 12);
        // The square annulus around (3,3) encloses a hole.
        let g = t(8, 2);
        let annulus: Vec<usize> = (0..64)
            .filter(|&v| {
                let (x, y) = (g.coord(v, 0) as i64, g.coord(v, 1) as i64);
                (x - 3).abs().max((y - 3).abs()) == 1
            })
            .collect();
        let region = bitset_from(64, annulus);
        let cuts = cutsets_of_region(&g, &region, Parity::Odd).unwrap();
        assert_eq!(cuts.len(), 2);
        let sizes: Vec<usize> = cuts.iter().map(|c| c.c.count_ones(..)).collect();
        assert!(sizes.contains(&1));
        assert!(cuts.iter().filter(|c| c.enveloping).count() == 1);
    }

    #[test]
    fn interior_tie_goes_to_w() {
        let g = t(4, 1);
        let w = bitset_from(4, [0, 1]);
        let c = Cutset::from_sides(&g, w.clone(), Parity::Even).unwrap();
        assert!(c.enveloping);
        assert_eq!(c.interior(), &w);
    }

    #[test]
    fn nested_regions_keep_outer_cutset() {
        // Even ring at ℓ∞-radius 3 around (8,8) plus the centre itself:
        // the inner region sits in the hole of the ring's region.
        let g = t(16, 2);
        let mut vs: Vec<usize> = (0..256)
            .filter(|&v| {
                let (x, y) = (g.coord(v, 0) as i64, g.coord(v, 1) as i64);
                (x - 8).abs().max((y - 8).abs()) == 3 && (x + y) % 2 == 0
            })
            .collect();
        vs.push(g.index(&[8, 8]).unwrap());
        let i = OccupancySet::from_vertices(&g, vs).unwrap();
        let regions = occupied_regions(&g, &i, Parity::Even).unwrap();
        assert_eq!(regions.len(), 2);
        let fam = gamma_family(&g, &i).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(fam.cutsets[0]
            .interior()
            .contains(g.index(&[8, 8]).unwrap()));
        assert!(fam.cutsets[0].w.count_ones(..) > 5);
    }

    #[test]
    fn all_even_set_is_odd_only() {
        let g = t(4, 2);
        let e = OccupancySet::parity_class(&g, Parity::Even);
        let labels = classify_even_odd(&g, &e).unwrap();
        assert_eq!(
            labels,
            ParityLabels {
                even: false,
                odd: true
            }
        );
        assert!(gamma_family(&g, &e).is_err());
        assert!(gamma_family_for(&g, &e, Parity::Odd).unwrap().is_empty());
    }

    #[test]
    fn hand_built_single_odd_vertex_fails_closure() {
        let g = t(4, 2);
        let w = bitset_from(16, [1]);
        let c = Cutset::from_sides(&g, w, Parity::Even).unwrap();
        let r = verify_contour_properties(&g, &OccupancySet::empty(16), &c);
        assert!(!r.odd_part_closed.holds);
        assert_eq!(r.odd_part_closed.witness, Some(1));
        let pair = Cutset::from_sides(&g, bitset_from(16, [0, 1]), Parity::Even).unwrap();
        let id = size_identity(&g, &pair).unwrap();
        assert_eq!((id.lhs, id.rhs, id.holds), (6, 0, false));
    }

    #[test]
    fn isoperimetry_examples() {
        let g = t(4, 2);
        let r = isoperimetry_check(&g, &bitset_from(16, [0])).unwrap();
        assert_eq!((r.boundary, r.edge_boundary), (4, 4));
        // r = 1: 2·1·4 = 8; r = 2: 2·1·2·1 = 4.
        assert_eq!(r.bound, 4.0);
        assert!(r.holds);
        let empty = isoperimetry_check(&g, &FixedBitSet::with_capacity(16)).unwrap();
        assert_eq!((empty.bound, empty.holds), (0.0, true));
        let corner = isoperimetry_check(&g, &bitset_from(16, [0, 1, 3, 4])).unwrap();
        assert_eq!(
            (corner.boundary, corner.edge_boundary, corner.bound),
            (7, 10, 8.0)
        );
        assert!(!corner.holds && corner.edge_holds);
        assert!(isoperimetry_check(&g, &bitset_from(16, 0..9)).is_err());
    }

    #[test]
    fn dual_graph_examples() {
        let g = t(4, 2);
        let i = set(&g, &[&[0, 0]]);
        let fam = gamma_family(&g, &i).unwrap();
        let dual = dual_graph(&g, &fam.cutsets[0].edges);
        assert_eq!(dual.nodes.len(), 12);
        assert!(dual.is_connected());
        for (a, adj) in dual.adjacency.iter().enumerate() {
            assert!(!adj.contains(&a));
            for &b in adj {
                assert!(dual.adjacency[b].contains(&a));
            }
        }
        let single = dual_graph(&g, &fam.cutsets[0].edges[..1]);
        assert_eq!(single.components().len(), 1);
        assert!(single.adjacency[0].is_empty());

        let big = t(12, 2);
        let far = set(&big, &[&[0, 0], &[6, 6]]);
        let fam = gamma_family(&big, &far).unwrap();
        assert_eq!(fam.len(), 2);
        let mut merged = fam.cutsets[0].edges.clone();
        merged.extend(&fam.cutsets[1].edges);
        assert_eq!(dual_graph(&big, &merged).components().len(), 2);
    }

    /// T_{8,2}, I = even vertices in the columns x ∈ {1, 2}: the region
    /// wraps around the torus and its cutset is non-trivial.
    #[test]
    fn wrapping_band_is_nontrivial() {
        let g = t(8, 2);
        let vs: Vec<usize> = (0..64)
            .filter(|&v| matches!(g.coord(v, 0), 1 | 2) && g.parity_of(v) == Parity::Even)
            .collect();
        let i = OccupancySet::from_vertices(&g, vs).unwrap();
        let fam = gamma_family(&g, &i).unwrap();
        assert_eq!(fam.len(), 1);
        let gamma = &fam.cutsets[0];
        assert_eq!(gamma.w_counts(&g), (8, 16));
        assert_eq!(gamma.size(), 32);
        assert!(verify_contour_properties(&g, &i, gamma).all_hold());
        let report = two_component_structure(&g, gamma).unwrap();
        assert!(!report.trivial);
        assert_eq!(report.dual_component_sizes, vec![16, 16]);
        assert!(report.dual_components_large);
        assert_eq!(report.boundary_size, 16);
        assert_eq!(report.two_component_sizes, vec![16]);
        assert!(report.two_components_large);
    }

    #[test]
    fn trivial_cutset_boundary_is_one_two_component() {
        let g = t(4, 2);
        let i = set(&g, &[&[0, 0]]);
        let fam = gamma_family(&g, &i).unwrap();
        let r = two_component_structure(&g, &fam.cutsets[0]).unwrap();
        assert!(r.trivial);
        assert_eq!(r.two_component_sizes, vec![4]);
        assert!(r.trivial_implies_clustered);
    }

    #[test]
    fn profiles_and_buckets() {
        let g = t(4, 2);
        let i = set(&g, &[&[0, 0]]);
        let fam = gamma_family(&g, &i).unwrap();
        assert_eq!(profile_of(&g, &fam, &[0], &[0]).unwrap(), vec![(12, 0)]);
        assert!(profile_of(&g, &fam, &[], &[]).unwrap().is_empty());
        assert!(profile_of(&g, &fam, &[0], &[1]).is_err());
        assert!(profile_of(&g, &fam, &[0], &[5]).is_err());
        let buckets = size_buckets(&fam);
        assert_eq!(buckets.keys().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(size_bucket(1), 1);
        assert_eq!(size_bucket(8), 4);
        assert_eq!(size_bucket(15), 4);
        assert_eq!(size_bucket(16), 5);
        let empty = ContourFamily {
            cutsets: vec![],
            parity: Parity::Even,
        };
        assert!(size_buckets(&empty).is_empty());
    }

    #[test]
    fn works_on_a_plain_cycle() {
        let g = SimpleGraph::cycle(10);
        let i = OccupancySet::from_vertices(&g, [0, 2]).unwrap();
        let fam = gamma_family(&g, &i).unwrap();
        assert_eq!(fam.len(), 1);
        let gamma = &fam.cutsets[0];
        assert_eq!(gamma.w.ones().collect::<Vec<_>>(), vec![0, 1, 2, 3, 9]);
        assert_eq!(size_identity(&g, gamma).unwrap().lhs, 2);
        assert!(size_identity(&g, gamma).unwrap().holds);
        assert!(verify_contour_properties(&g, &i, gamma).all_hold());
    }
}
