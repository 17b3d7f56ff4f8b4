//! The shift transformation behind the slow-mixing argument.
//!
//! Given an even independent set I and a cutset γ ∈ Γ(I) with interior W,
//! shifting `I ∩ W` one step in direction s frees the sites
//! `W^s = {x ∈ ∂_int W : σ_s^{-1}(x) ∉ W}`, any subset of which can be
//! added back. The flow ν spreads unit mass from I over these images.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::cutsets::Cutset;
use crate::error::{Error, Result};
use crate::graph::{
    degree_into, external_boundary, internal_boundary, parity_class, restrict_parity,
    BipartiteGraph, Parity,
};
use crate::hardcore::{conflict, OccupancySet};
use crate::scalar::Scalar;
use crate::torus::{Direction, TorusGraph};

/// Largest `|W^s|` for which [`flow_out_sum`] expands every subset.
pub const FLOW_EXPANSION_BUDGET: usize = 30;

/// `W^s`.
pub fn free_sites(g: &TorusGraph, w: &FixedBitSet, s: Direction) -> FixedBitSet {
    let back = s.reverse();
    let mut out = internal_boundary(g, w);
    let drop: Vec<usize> = out
        .ones()
        .filter(|&x| w.contains(g.shift(x, back)))
        .collect();
    for x in drop {
        out.set(x, false);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftResult {
    /// `(I ∖ W) ∪ σ_s(I ∩ W)`.
    pub shifted: OccupancySet,
    pub free_sites: FixedBitSet,
    pub direction: Direction,
}

fn require_even_family(gamma: &Cutset) -> Result<()> {
    if gamma.parity != Parity::Even {
        return Err(Error::Precondition(
            "cutset does not come from an even decomposition".into(),
        ));
    }
    Ok(())
}

/// Shifts the occupied vertices inside W by `s` and checks that the
/// result, together with all free sites, is still independent.
pub fn interior_shift(
    g: &TorusGraph,
    set: &OccupancySet,
    gamma: &Cutset,
    s: Direction,
) -> Result<ShiftResult> {
    require_even_family(gamma)?;
    let w = &gamma.w;
    let mut bits = FixedBitSet::with_capacity(g.len());
    for v in set.vertices() {
        bits.insert(if w.contains(v) { g.shift(v, s) } else { v });
    }
    let shifted = OccupancySet::from_bits(g, bits)?;
    if shifted.len() != set.len() {
        return Err(Error::InvariantViolation(format!(
            "shift changed the size from {} to {}",
            set.len(),
            shifted.len()
        )));
    }
    if let Some((u, v)) = conflict(g, &shifted)? {
        return Err(Error::InvariantViolation(format!(
            "shifted set has edge ({u}, {v})"
        )));
    }
    let free = free_sites(g, w, s);
    if let Some(x) = free.ones().find(|&x| shifted.contains(x)) {
        return Err(Error::InvariantViolation(format!(
            "free site {x} is occupied after the shift"
        )));
    }
    let mut union = shifted.bits().clone();
    union.union_with(&free);
    if let Some((u, v)) = conflict(g, &OccupancySet::from_bits(g, union)?)? {
        return Err(Error::InvariantViolation(format!(
            "shifted set plus free sites has edge ({u}, {v})"
        )));
    }
    Ok(ShiftResult {
        shifted,
        free_sites: free,
        direction: s,
    })
}

/// A pair `(A^E, A^O)` standing in for `(W^E, W^O)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub even: FixedBitSet,
    pub odd: FixedBitSet,
}

impl Approximation {
    /// `A = W`, which approximates its own cutset.
    pub fn of_cutset(g: &TorusGraph, gamma: &Cutset) -> Self {
        Approximation {
            even: restrict_parity(g, &gamma.w, Parity::Even),
            odd: restrict_parity(g, &gamma.w, Parity::Odd),
        }
    }
}

/// Each condition with the first vertex that breaks it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximationReport {
    /// `A^E ⊇ W^E` and `A^O ⊆ W^O`.
    pub containment: Option<usize>,
    /// Every `x ∈ A^E` has at least `2d − √d` neighbors in `A^O`.
    pub even_degree: Option<usize>,
    /// Every `y ∈ O ∖ A^O` has at least `2d − √d` neighbors in `E ∖ A^E`.
    pub odd_degree: Option<usize>,
}

impl ApproximationReport {
    pub fn holds(&self) -> bool {
        self.containment.is_none() && self.even_degree.is_none() && self.odd_degree.is_none()
    }
}

/// `k ≥ 2d − √d`, in integers.
fn dense_enough(k: usize, dim: usize) -> bool {
    let deficit = 2 * dim as i64 - k as i64;
    deficit <= 0 || (deficit * deficit) as usize <= dim
}

pub fn is_approximation(g: &TorusGraph, a: &Approximation, gamma: &Cutset) -> ApproximationReport {
    let w_e = restrict_parity(g, &gamma.w, Parity::Even);
    let w_o = restrict_parity(g, &gamma.w, Parity::Odd);
    let containment = w_e
        .ones()
        .find(|&v| !a.even.contains(v))
        .or_else(|| a.odd.ones().find(|&v| !w_o.contains(v)));
    let dim = g.dim();
    let even_degree = a
        .even
        .ones()
        .find(|&x| !dense_enough(degree_into(g, x, &a.odd), dim));
    let mut not_even = parity_class(g, Parity::Even);
    not_even.difference_with(&a.even);
    let odd_degree = (0..g.len())
        .filter(|&y| g.parity_of(y) == Parity::Odd && !a.odd.contains(y))
        .find(|&y| !dense_enough(degree_into(g, y, &not_even), dim));
    ApproximationReport {
        containment,
        even_degree,
        odd_degree,
    }
}

/// `Q^E = A^E ∩ ∂_ext(O ∖ A^O)` and `Q^O = (O ∖ A^O) ∩ ∂_ext A^E`.
pub fn q_sets(g: &TorusGraph, a: &Approximation) -> (FixedBitSet, FixedBitSet) {
    let mut odd_out = parity_class(g, Parity::Odd);
    odd_out.difference_with(&a.odd);
    let mut q_e = external_boundary(g, &odd_out);
    q_e.intersect_with(&a.even);
    let mut q_o = external_boundary(g, &a.even);
    q_o.intersect_with(&odd_out);
    (q_e, q_o)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectionDiagnostics {
    pub direction: i32,
    pub free_sites: usize,
    /// `|σ_s(Q^E) ∩ Q^O|`.
    pub q_overlap: usize,
    /// `|W^s| ≥ 0.8 (w_o − w_e)`.
    pub enough_free: bool,
    /// `|σ_s(Q^E) ∩ Q^O| ≤ 5 |W^s| / √d`.
    pub small_overlap: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionChoice {
    pub direction: i32,
    /// No direction met both criteria; the largest `|W^s|` was taken.
    pub fallback: bool,
    pub diagnostics: Vec<DirectionDiagnostics>,
}

/// Diagnostics for every direction, in the order `+1, −1, +2, −2, …`.
pub fn direction_diagnostics(
    g: &TorusGraph,
    gamma: &Cutset,
    a: &Approximation,
) -> Vec<DirectionDiagnostics> {
    let (w_e, w_o) = gamma.w_counts(g);
    let excess = w_o as i64 - w_e as i64;
    let (q_e, q_o) = q_sets(g, a);
    let dim = g.dim();
    Direction::all(dim)
        .map(|s| {
            let free = free_sites(g, &gamma.w, s).count_ones(..);
            let overlap = q_e.ones().filter(|&x| q_o.contains(g.shift(x, s))).count();
            DirectionDiagnostics {
                direction: s.value(),
                free_sites: free,
                q_overlap: overlap,
                enough_free: 5 * free as i64 >= 4 * excess,
                small_overlap: overlap * overlap * dim <= 25 * free * free,
            }
        })
        .collect()
}

/// First direction meeting both criteria, else the first with the most
/// free sites.
pub fn select_direction(diagnostics: Vec<DirectionDiagnostics>) -> Result<DirectionChoice> {
    if let Some(d) = diagnostics
        .iter()
        .find(|d| d.enough_free && d.small_overlap)
    {
        return Ok(DirectionChoice {
            direction: d.direction,
            fallback: false,
            diagnostics,
        });
    }
    let best = diagnostics
        .iter()
        .map(|d| d.free_sites)
        .max()
        .ok_or_else(|| Error::Precondition("no directions to choose from".into()))?;
    let direction = diagnostics
        .iter()
        .find(|d| d.free_sites == best)
        .unwrap()
        .direction;
    Ok(DirectionChoice {
        direction,
        fallback: true,
        diagnostics,
    })
}

pub fn choose_direction(
    g: &TorusGraph,
    gamma: &Cutset,
    a: &Approximation,
) -> Result<DirectionChoice> {
    require_even_family(gamma)?;
    select_direction(direction_diagnostics(g, gamma, a))
}

/// The free sites split into `C = W^s ∩ A^O ∩ σ_s(Q^E)` and `D = W^s ∖ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowLayout {
    pub free: FixedBitSet,
    pub c: FixedBitSet,
}

impl FlowLayout {
    pub fn new(g: &TorusGraph, gamma: &Cutset, a: &Approximation, s: Direction) -> Self {
        let free = free_sites(g, &gamma.w, s);
        let (q_e, _) = q_sets(g, a);
        let shifted_q = g.shift_set(&q_e, s);
        let mut c = free.clone();
        c.intersect_with(&a.odd);
        c.intersect_with(&shifted_q);
        FlowLayout { free, c }
    }

    /// A layout on `c + d` abstract sites, the first `c` of them in C.
    pub fn synthetic(c: usize, d: usize) -> Self {
        let mut free = FixedBitSet::with_capacity(c + d);
        free.insert_range(..);
        let mut cs = FixedBitSet::with_capacity(c + d);
        cs.insert_range(..c);
        FlowLayout { free, c: cs }
    }

    pub fn c_len(&self) -> usize {
        self.c.count_ones(..)
    }

    pub fn d_len(&self) -> usize {
        self.free.count_ones(..) - self.c_len()
    }

    pub fn free_len(&self) -> usize {
        self.free.count_ones(..)
    }
}

/// Exponents `(|J ∩ W^s|, |C ∩ J|, |C ∖ J|, |D|)` and the resulting ν.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowTerm<S> {
    pub value: S,
    pub exponents: (usize, usize, usize, usize),
}

/// `λ^a (λ/(1+λ)²)^b ((1+2λ)/(1+λ)²)^c (1/(1+λ))^d`.
pub fn nu_value<S: Scalar>(lambda: &S, exponents: (usize, usize, usize, usize)) -> S {
    let (a, b, c, d) = exponents;
    let one = S::one();
    let denom = one.clone() + lambda.clone();
    let denom2 = denom.clone() * denom.clone();
    let two_lambda = lambda.clone() + lambda.clone();
    lambda.powu(a)
        * (lambda.clone() / denom2.clone()).powu(b)
        * ((one.clone() + two_lambda) / denom2).powu(c)
        * (one / denom).powu(d)
}

/// ν(I, J) for `J = I_0 ∪ S` with `S ⊆ W^s`.
pub fn flow_nu<S: Scalar>(
    lambda: &S,
    layout: &FlowLayout,
    shifted: &OccupancySet,
    j: &OccupancySet,
) -> Result<FlowTerm<S>> {
    if *lambda <= S::zero() {
        return Err(Error::NonPositiveActivity);
    }
    if !shifted.is_subset(j) {
        return Err(Error::Precondition(
            "J does not contain the shifted set".into(),
        ));
    }
    let mut extra = j.bits().clone();
    extra.difference_with(shifted.bits());
    if let Some(v) = extra.ones().find(|&v| !layout.free.contains(v)) {
        return Err(Error::Precondition(format!(
            "J adds {v}, which is not a free site"
        )));
    }
    let in_free = j.bits().intersection(&layout.free).count();
    let c_in = j.bits().intersection(&layout.c).count();
    let exponents = (in_free, c_in, layout.c_len() - c_in, layout.d_len());
    Ok(FlowTerm {
        value: nu_value(lambda, exponents),
        exponents,
    })
}

/// `Σ_{S ⊆ W^s} ν(I, I_0 ∪ S)`, expanding every subset. Exactly 1 for
/// rational λ.
pub fn flow_out_sum<S: Scalar>(lambda: &S, layout: &FlowLayout) -> Result<S> {
    if *lambda <= S::zero() {
        return Err(Error::NonPositiveActivity);
    }
    let sites: Vec<usize> = layout.free.ones().collect();
    if sites.len() > FLOW_EXPANSION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{} free sites exceed the expansion budget of {FLOW_EXPANSION_BUDGET}",
            sites.len()
        )));
    }
    let c_mask: u64 = sites
        .iter()
        .enumerate()
        .filter(|(_, &v)| layout.c.contains(v))
        .fold(0, |m, (i, _)| m | 1 << i);
    let (nc, nd) = (layout.c_len(), layout.d_len());
    // Subsets sharing (|S ∩ C|, |S ∩ D|) share a weight.
    let mut classes = vec![vec![0u64; nd + 1]; nc + 1];
    for mask in 0u64..1 << sites.len() {
        let b = (mask & c_mask).count_ones() as usize;
        let a = mask.count_ones() as usize;
        classes[b][a - b] += 1;
    }
    let mut total = S::zero();
    for (b, row) in classes.iter().enumerate() {
        for (e, &count) in row.iter().enumerate() {
            if count > 0 {
                total = total + S::from_u64(count) * nu_value(lambda, (b + e, b, nc - b, nd));
            }
        }
    }
    Ok(total)
}

/// `U` with `N(U)` covering the sparse inner boundaries of W and C.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoarseWitness {
    pub u: Vec<usize>,
    pub target_size: usize,
    /// `U ⊆ N(target)`.
    pub within_candidates: bool,
    /// `N(U) ⊇ target`.
    pub covers: bool,
    /// Deleting `N(U)` leaves no edge between W and C.
    pub separates: bool,
    /// `(w_o − w_e) √(log(2d) / 2d)`, for comparison with `|U|`.
    pub scale: f64,
}

/// Greedy cover: repeatedly take the candidate covering the most
/// uncovered targets, ties to the smallest index.
pub fn coarse_witness_u(g: &TorusGraph, gamma: &Cutset) -> Result<CoarseWitness> {
    require_even_family(gamma)?;
    let (w_part, c_part) = crate::cutsets::sparse_boundaries(g, gamma);
    let mut target = w_part;
    target.union_with(&c_part);
    let mut candidates = FixedBitSet::with_capacity(g.len());
    for t in target.ones() {
        candidates.extend(g.neighbors(t));
    }
    let mut uncovered = target.clone();
    let mut u = Vec::new();
    while !uncovered.is_clear() {
        let (best, gain) = candidates
            .ones()
            .map(|c| (c, degree_into(g, c, &uncovered)))
            .fold((usize::MAX, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if gain == 0 {
            return Err(Error::InvariantViolation("greedy cover stalled".into()));
        }
        u.push(best);
        for t in g.neighbors(best) {
            uncovered.set(t, false);
        }
    }
    u.sort_unstable();

    let mut covered = FixedBitSet::with_capacity(g.len());
    for &x in &u {
        covered.extend(g.neighbors(x));
    }
    let covers = target.is_subset(&covered);
    let within_candidates = u.iter().all(|&x| candidates.contains(x));
    // Every W–C path crosses γ, so separation means each edge of γ
    // loses an endpoint.
    let separates = gamma
        .edges
        .iter()
        .all(|&(a, b)| covered.contains(a) || covered.contains(b));
    let (w_e, w_o) = gamma.w_counts(g);
    let two_d = 2.0 * g.dim() as f64;
    Ok(CoarseWitness {
        target_size: target.count_ones(..),
        u,
        within_candidates,
        covers,
        separates,
        scale: (w_o as f64 - w_e as f64) * (two_d.ln() / two_d).sqrt(),
    })
}

/// `β(λ) = 2 ln(1+λ) − ln(1+2λ)`.
pub fn beta(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::NonPositiveActivity);
    }
    Ok(2.0 * lambda.ln_1p() - (2.0 * lambda).ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutsets::gamma_family;
    use crate::graph::bitset_from;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn single_vertex() -> (TorusGraph, OccupancySet, Cutset) {
        let g = TorusGraph::new(4, 2).unwrap();
        let i = OccupancySet::from_vertices(&g, [0]).unwrap();
        let gamma = gamma_family(&g, &i).unwrap().cutsets.remove(0);
        (g, i, gamma)
    }

    #[test]
    fn free_sites_of_single_vertex() {
        let (g, _, gamma) = single_vertex();
        let s = Direction::new(1, 2).unwrap();
        let free: Vec<Vec<usize>> = free_sites(&g, &gamma.w, s)
            .ones()
            .map(|v| g.coords(v))
            .collect();
        assert_eq!(free, vec![vec![3, 0], vec![0, 1], vec![0, 3]]);
        for s in Direction::all(2) {
            assert_eq!(free_sites(&g, &gamma.w, s).count_ones(..), 3);
        }
        let all = complement_of_empty(16);
        assert!(free_sites(&g, &all, s).is_clear());
    }

    fn complement_of_empty(n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert_range(..);
        b
    }

    #[test]
    fn shift_single_vertex() {
        let (g, i, gamma) = single_vertex();
        let r = interior_shift(&g, &i, &gamma, Direction::new(1, 2).unwrap()).unwrap();
        assert_eq!(
            r.shifted.vertices().collect::<Vec<_>>(),
            vec![g.index(&[1, 0]).unwrap()]
        );
    }

    #[test]
    fn shift_leaves_outside_alone() {
        let g = TorusGraph::new(8, 2).unwrap();
        let i = OccupancySet::from_vertices(&g, [0, g.index(&[4, 4]).unwrap()]).unwrap();
        let fam = gamma_family(&g, &i).unwrap();
        let gamma = &fam.cutsets[0];
        let r = interior_shift(&g, &i, gamma, Direction::new(-2, 2).unwrap()).unwrap();
        assert!(r.shifted.contains(g.index(&[4, 4]).unwrap()));
        assert!(r.shifted.contains(g.index(&[0, 7]).unwrap()));
        let empty_w = Cutset::from_sides(&g, bitset_from(64, [9]), Parity::Even).unwrap();
        let r = interior_shift(&g, &i, &empty_w, Direction::new(1, 2).unwrap()).unwrap();
        assert_eq!(r.shifted, i);
    }

    #[test]
    fn own_sides_approximate_the_cutset() {
        let (g, _, gamma) = single_vertex();
        let a = Approximation::of_cutset(&g, &gamma);
        assert!(is_approximation(&g, &a, &gamma).holds());
        let mut missing = a.clone();
        missing.even.set(0, false);
        assert_eq!(is_approximation(&g, &missing, &gamma).containment, Some(0));
        let mut no_odd = a.clone();
        no_odd.odd.clear();
        assert_eq!(is_approximation(&g, &no_odd, &gamma).even_degree, Some(0));
        assert!(dense_enough(3, 2));
        assert!(!dense_enough(2, 2));
        assert!(!dense_enough(5, 4));
        assert!(dense_enough(6, 4));
        assert!(!dense_enough(5, 9));
    }

    #[test]
    fn q_sets_vanish_for_exact_sides() {
        let (g, _, gamma) = single_vertex();
        let a = Approximation::of_cutset(&g, &gamma);
        let (qe, qo) = q_sets(&g, &a);
        assert!(qe.is_clear() && qo.is_clear());
        let empty = Approximation {
            even: FixedBitSet::with_capacity(16),
            odd: FixedBitSet::with_capacity(16),
        };
        let (qe, qo) = q_sets(&g, &empty);
        assert!(qe.is_clear() && qo.is_clear());
        // Dropping an odd vertex from A^O exposes its even neighbours.
        let mut loose = a.clone();
        let x = g.index(&[1, 0]).unwrap();
        loose.odd.set(x, false);
        let (qe, qo) = q_sets(&g, &loose);
        assert_eq!(qe.ones().collect::<Vec<_>>(), vec![0]);
        assert_eq!(qo.ones().collect::<Vec<_>>(), vec![x]);
    }

    #[test]
    fn symmetric_contour_picks_first_direction() {
        let (g, _, gamma) = single_vertex();
        let a = Approximation::of_cutset(&g, &gamma);
        let choice = choose_direction(&g, &gamma, &a).unwrap();
        assert_eq!(choice.direction, 1);
        assert!(!choice.fallback);
        assert_eq!(choice.diagnostics.len(), 4);
        assert!(choice
            .diagnostics
            .iter()
            .all(|d| d.free_sites == 3 && d.q_overlap == 0));
    }

    #[test]
    fn fallback_takes_most_free_sites() {
        let diag = |direction, free_sites| DirectionDiagnostics {
            direction,
            free_sites,
            q_overlap: 0,
            enough_free: false,
            small_overlap: true,
        };
        let choice =
            select_direction(vec![diag(1, 2), diag(-1, 5), diag(2, 5), diag(-2, 1)]).unwrap();
        assert_eq!(choice.direction, -1);
        assert!(choice.fallback);
        assert!(select_direction(vec![]).is_err());
    }

    #[test]
    fn nu_examples() {
        let one = q(1, 1);
        let layout = FlowLayout::synthetic(1, 0);
        assert_eq!(nu_value(&one, (0, 0, 1, 0)), q(3, 4));
        assert_eq!(nu_value(&one, (1, 1, 0, 0)), q(1, 4));
        assert_eq!(flow_out_sum(&one, &layout).unwrap(), one);
        let empty = FlowLayout::synthetic(0, 0);
        assert_eq!(flow_out_sum(&q(5, 3), &empty).unwrap(), one);
    }

    #[test]
    fn flow_sums_to_one_exactly() {
        for (c, d) in [(2usize, 3usize), (0, 4), (5, 0), (3, 7)] {
            let layout = FlowLayout::synthetic(c, d);
            for lam in [q(1, 1), q(1, 3), q(7, 2), q(1, 1000)] {
                assert_eq!(
                    flow_out_sum(&lam, &layout).unwrap(),
                    q(1, 1),
                    "c={c} d={d} λ={lam}"
                );
            }
        }
        assert!(flow_out_sum(&q(1, 1), &FlowLayout::synthetic(10, 21)).is_err());
    }

    #[test]
    fn flow_on_single_vertex_contour() {
        let (g, i, gamma) = single_vertex();
        let a = Approximation::of_cutset(&g, &gamma);
        let s = Direction::new(1, 2).unwrap();
        let layout = FlowLayout::new(&g, &gamma, &a, s);
        assert_eq!((layout.c_len(), layout.d_len()), (0, 3));
        assert_eq!(flow_out_sum(&q(1, 1), &layout).unwrap(), q(1, 1));
        let shift = interior_shift(&g, &i, &gamma, s).unwrap();
        let term = flow_nu(&q(1, 1), &layout, &shift.shifted, &shift.shifted).unwrap();
        assert_eq!(term.exponents, (0, 0, 0, 3));
        assert_eq!(term.value, q(1, 8));
        assert!(flow_nu(&q(1, 1), &layout, &shift.shifted, &i).is_err());
    }

    #[test]
    fn coarse_witness_on_single_vertex() {
        let (g, _, gamma) = single_vertex();
        let w = coarse_witness_u(&g, &gamma).unwrap();
        assert!(w.covers && w.within_candidates && w.separates);
        assert!(!w.u.is_empty());
        let g = TorusGraph::new(4, 2).unwrap();
        let whole = Cutset::from_sides(&g, complement_of_empty(16), Parity::Even).unwrap();
        let w = coarse_witness_u(&g, &whole).unwrap();
        assert_eq!(w.target_size, 0);
        assert!(w.u.is_empty() && w.covers && w.separates);
    }

    #[test]
    fn beta_values() {
        assert!((beta(1.0).unwrap() - 0.28768).abs() < 1e-5);
        assert!((beta(2.0).unwrap() - 0.58779).abs() < 1e-5);
        assert!(beta(1e-9).unwrap() < 1e-15);
        assert!(beta(0.0).is_err());
        let grid: Vec<f64> = (1..200).map(|k| beta(k as f64 * 0.05).unwrap()).collect();
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!(grid.iter().all(|&b| b > 0.0));
    }
}
