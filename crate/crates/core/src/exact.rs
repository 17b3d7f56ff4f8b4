//! Brute-force analysis of small instances: enumeration of independent
//! sets, the partition function, the stationary law, the Glauber
//! transition matrix, exact mixing times and conductance bounds.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Parity};
use crate::hardcore::{classify, BalanceClass, OccupancySet, Rho};
use crate::scalar::Scalar;
use crate::torus::TorusGraph;

/// Default refusal threshold for enumeration.
pub const DEFAULT_STATE_CAP: usize = 2_000_000;

/// `2^|E| + 2^|O| − 1`: subsets of one class are always independent.
fn count_lower_bound<G: BipartiteGraph + ?Sized>(g: &G) -> (u32, u32) {
    let even = (0..g.vertex_count())
        .filter(|&v| g.parity(v) == Parity::Even)
        .count() as u32;
    (even, g.vertex_count() as u32 - even)
}

fn check_cap<G: BipartiteGraph + ?Sized>(g: &G, cap: usize) -> Result<()> {
    let (e, o) = count_lower_bound(g);
    let big = |k: u32| if k >= 127 { None } else { Some(1u128 << k) };
    let bound = match (big(e), big(o)) {
        (Some(a), Some(b)) => Some(a + b - 1),
        _ => None,
    };
    match bound {
        Some(b) if b <= cap as u128 => Ok(()),
        Some(b) => Err(Error::EnumerationCap {
            cap,
            lower_bound: b.to_string(),
        }),
        None => Err(Error::EnumerationCap {
            cap,
            lower_bound: format!("2^{}", e.max(o)),
        }),
    }
}

/// Backtracking over vertex indices: include `v` only if no earlier
/// neighbor is occupied.
struct Backtracker<'g, G: BipartiteGraph + ?Sized> {
    g: &'g G,
    earlier: Vec<Vec<usize>>,
    current: FixedBitSet,
}

impl<'g, G: BipartiteGraph + ?Sized> Backtracker<'g, G> {
    fn new(g: &'g G) -> Self {
        let n = g.vertex_count();
        let earlier = (0..n)
            .map(|v| g.neighbors(v).into_iter().filter(|&u| u < v).collect())
            .collect();
        Backtracker {
            g,
            earlier,
            current: FixedBitSet::with_capacity(n),
        }
    }

    fn run<F: FnMut(&FixedBitSet) -> bool>(&mut self, v: usize, visit: &mut F) -> bool {
        if v == self.g.vertex_count() {
            return visit(&self.current);
        }
        if !self.run(v + 1, visit) {
            return false;
        }
        if self.earlier[v].iter().all(|&u| !self.current.contains(u)) {
            self.current.insert(v);
            let keep_going = self.run(v + 1, visit);
            self.current.set(v, false);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// All independent sets, each once, sorted by cardinality then by sorted
/// vertex list.
pub fn enumerate_independent_sets<G: BipartiteGraph + ?Sized>(
    g: &G,
    cap: usize,
) -> Result<Vec<OccupancySet>> {
    check_cap(g, cap)?;
    let mut out = Vec::new();
    let mut overflow = false;
    Backtracker::new(g).run(0, &mut |bits: &FixedBitSet| {
        if out.len() == cap {
            overflow = true;
            return false;
        }
        out.push(OccupancySet::from_bits(g, bits.clone()).expect("sized to graph"));
        true
    });
    if overflow {
        return Err(Error::EnumerationCap {
            cap,
            lower_bound: (cap + 1).to_string(),
        });
    }
    out.sort_by_cached_key(OccupancySet::order_key);
    Ok(out)
}

/// Coefficients `i_k = #{I : |I| = k}` of the independence polynomial.
pub fn independence_polynomial<G: BipartiteGraph + ?Sized>(g: &G, cap: usize) -> Result<Vec<u64>> {
    check_cap(g, cap)?;
    let mut coeffs = vec![0u64; g.vertex_count() + 1];
    let mut total = 0usize;
    let mut overflow = false;
    Backtracker::new(g).run(0, &mut |bits: &FixedBitSet| {
        total += 1;
        if total > cap {
            overflow = true;
            return false;
        }
        coeffs[bits.count_ones(..)] += 1;
        true
    });
    if overflow {
        return Err(Error::EnumerationCap {
            cap,
            lower_bound: (cap + 1).to_string(),
        });
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// `counts[e][o] = #{I : |I ∩ E| = e, |I ∩ O| = o}`.
pub fn parity_count_table<G: BipartiteGraph + ?Sized>(g: &G, cap: usize) -> Result<Vec<Vec<u64>>> {
    check_cap(g, cap)?;
    let (even, odd) = count_lower_bound(g);
    let mut table = vec![vec![0u64; odd as usize + 1]; even as usize + 1];
    let mut total = 0usize;
    let mut overflow = false;
    Backtracker::new(g).run(0, &mut |bits: &FixedBitSet| {
        total += 1;
        if total > cap {
            overflow = true;
            return false;
        }
        let e = bits.ones().filter(|&v| g.parity(v) == Parity::Even).count();
        table[e][bits.count_ones(..) - e] += 1;
        true
    });
    if overflow {
        return Err(Error::EnumerationCap {
            cap,
            lower_bound: (cap + 1).to_string(),
        });
    }
    Ok(table)
}

/// Exact balance-class masses, partition function and mean size from the
/// parity count table, without building the transition matrix.
pub fn class_summary<S: Scalar, G: BipartiteGraph + ?Sized>(
    g: &G,
    lambda: &S,
    rho: Rho,
) -> Result<ClassSummary<S>> {
    if *lambda <= S::zero() {
        return Err(Error::NonPositiveActivity);
    }
    let table = parity_count_table(g, DEFAULT_STATE_CAP)?;
    let n = g.vertex_count();
    let mut weights = ClassMass {
        balanced: S::zero(),
        even_heavy: S::zero(),
        odd_heavy: S::zero(),
    };
    let mut z = S::zero();
    let mut size_moment = S::zero();
    let mut states = 0u64;
    for (e, row) in table.iter().enumerate() {
        for (o, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            states += count;
            let w = S::from_u64(count) * lambda.powu(e + o);
            z = z + w.clone();
            size_moment = size_moment + w.clone() * S::from_u64((e + o) as u64);
            let slot = match crate::hardcore::classify_counts(e, o, n, rho) {
                BalanceClass::Balanced => &mut weights.balanced,
                BalanceClass::EvenHeavy => &mut weights.even_heavy,
                BalanceClass::OddHeavy => &mut weights.odd_heavy,
            };
            *slot = slot.clone() + w;
        }
    }
    Ok(ClassSummary {
        states,
        mass: ClassMass {
            balanced: weights.balanced / z.clone(),
            even_heavy: weights.even_heavy / z.clone(),
            odd_heavy: weights.odd_heavy / z.clone(),
        },
        mean_size: size_moment / z.clone(),
        partition_function: z,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassSummary<S> {
    pub states: u64,
    pub partition_function: S,
    pub mass: ClassMass<S>,
    pub mean_size: S,
}

/// Horner evaluation of a counting polynomial.
pub fn evaluate_polynomial<S: Scalar>(coeffs: &[u64], x: &S) -> S {
    coeffs
        .iter()
        .rev()
        .fold(S::zero(), |acc, &c| acc * x.clone() + S::from_u64(c))
}

/// `Z_λ = Σ_I λ^{|I|}`; exact when `S` is rational.
pub fn partition_function<S: Scalar, G: BipartiteGraph + ?Sized>(g: &G, lambda: &S) -> Result<S> {
    if *lambda <= S::zero() {
        return Err(Error::NonPositiveActivity);
    }
    let coeffs = independence_polynomial(g, DEFAULT_STATE_CAP)?;
    Ok(evaluate_polynomial(&coeffs, lambda))
}

/// `tr(T^L)` with `T = [[1, 1], [λ, 0]]`: the partition function of the
/// cycle `C_L` via its transfer matrix.
pub fn cycle_partition_function_transfer<S: Scalar>(side: usize, lambda: &S) -> S {
    let mul = |a: &[S; 4], b: &[S; 4]| -> [S; 4] {
        [
            a[0].clone() * b[0].clone() + a[1].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() + a[1].clone() * b[3].clone(),
            a[2].clone() * b[0].clone() + a[3].clone() * b[2].clone(),
            a[2].clone() * b[1].clone() + a[3].clone() * b[3].clone(),
        ]
    };
    let t = [S::one(), S::one(), lambda.clone(), S::zero()];
    let mut acc = [S::one(), S::zero(), S::zero(), S::one()];
    for _ in 0..side {
        acc = mul(&acc, &t);
    }
    acc[0].clone() + acc[3].clone()
}

/// Sparse row-stochastic matrix; each row sorted by column and including
/// its diagonal entry.
#[derive(Clone, Debug)]
pub struct SparseKernel<S> {
    rows: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseKernel<S> {
    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn row_sum(&self, i: usize) -> S {
        self.rows[i]
            .iter()
            .fold(S::zero(), |acc, (_, p)| acc + p.clone())
    }

    pub fn max_row_len(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseKernel<T> {
        SparseKernel {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, p)| (*j, f(p))).collect())
                .collect(),
        }
    }

    /// `x ↦ xP` for a row vector `x`.
    pub fn left_multiply(&self, x: &[S], out: &mut [S]) {
        for o in out.iter_mut() {
            *o = S::zero();
        }
        for (i, row) in self.rows.iter().enumerate() {
            let xi = &x[i];
            if *xi == S::zero() {
                continue;
            }
            for (j, p) in row {
                out[*j] = out[*j].clone() + xi.clone() * p.clone();
            }
        }
    }
}

/// Full enumeration of `I(T_{L,d})` with `Z_λ`, `π_λ` and the Glauber
/// matrix.
#[derive(Clone, Debug)]
pub struct ExactModel<S> {
    graph: TorusGraph,
    lambda: S,
    states: Vec<OccupancySet>,
    index: HashMap<FixedBitSet, usize>,
    z: S,
    pi: Vec<S>,
    kernel: SparseKernel<S>,
    start_representatives: Vec<usize>,
}

impl<S: Scalar> ExactModel<S> {
    pub fn build(g: &TorusGraph, lambda: S) -> Result<Self> {
        Self::build_with_cap(g, lambda, DEFAULT_STATE_CAP)
    }

    pub fn build_with_cap(g: &TorusGraph, lambda: S, cap: usize) -> Result<Self> {
        if lambda <= S::zero() {
            return Err(Error::NonPositiveActivity);
        }
        let states = enumerate_independent_sets(g, cap)?;
        let index: HashMap<FixedBitSet, usize> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits().clone(), i))
            .collect();

        let max_size = states.last().map_or(0, OccupancySet::len);
        let powers: Vec<S> = (0..=max_size).map(|k| lambda.powu(k)).collect();
        let z = states
            .iter()
            .fold(S::zero(), |acc, s| acc + powers[s.len()].clone());
        let pi = states
            .iter()
            .map(|s| powers[s.len()].clone() / z.clone())
            .collect();

        let n = g.len();
        let denom = S::one() + lambda.clone();
        let n_s = S::from_u64(n as u64);
        let insert = lambda.clone() / denom.clone() / n_s.clone();
        let delete = S::one() / denom / n_s;
        let mut rows = Vec::with_capacity(states.len());
        for (i, state) in states.iter().enumerate() {
            let mut row: Vec<(usize, S)> = Vec::with_capacity(n + 1);
            let mut moved = S::zero();
            let mut bits = state.bits().clone();
            for v in 0..n {
                let p = if state.contains(v) {
                    delete.clone()
                } else if crate::hardcore::can_insert(g, state, v) {
                    insert.clone()
                } else {
                    continue;
                };
                bits.toggle(v);
                let j = index[&bits];
                bits.toggle(v);
                moved = moved + p.clone();
                row.push((j, p));
            }
            row.push((i, S::one() - moved));
            row.sort_by_key(|(j, _)| *j);
            rows.push(row);
        }

        let start_representatives = orbit_representatives(g, &states, &index);
        Ok(ExactModel {
            graph: g.clone(),
            lambda,
            states,
            index,
            z,
            pi,
            kernel: SparseKernel { rows },
            start_representatives,
        })
    }

    pub fn graph(&self) -> &TorusGraph {
        &self.graph
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    pub fn states(&self) -> &[OccupancySet] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, set: &OccupancySet) -> Option<usize> {
        self.index.get(set.bits()).copied()
    }

    pub fn partition_function(&self) -> &S {
        &self.z
    }

    /// `π_λ(I) = λ^{|I|} / Z_λ`.
    pub fn stationary_distribution(&self) -> &[S] {
        &self.pi
    }

    pub fn kernel(&self) -> &SparseKernel<S> {
        &self.kernel
    }

    pub fn transition(&self, i: usize, j: usize) -> S {
        self.kernel.get(i, j)
    }

    /// One state from each orbit of the torus symmetry group; the mixing
    /// profile is constant on orbits.
    pub fn start_representatives(&self) -> &[usize] {
        &self.start_representatives
    }

    pub fn mass(&self, states: &[usize]) -> S {
        states
            .iter()
            .fold(S::zero(), |acc, &i| acc + self.pi[i].clone())
    }

    /// State indices in each balance class, in state order.
    pub fn class_members(&self, rho: Rho) -> ClassMembers {
        let mut members = ClassMembers::default();
        for (i, s) in self.states.iter().enumerate() {
            match classify(&self.graph, s, rho) {
                BalanceClass::Balanced => members.balanced.push(i),
                BalanceClass::EvenHeavy => members.even_heavy.push(i),
                BalanceClass::OddHeavy => members.odd_heavy.push(i),
            }
        }
        members
    }

    pub fn class_mass(&self, rho: Rho) -> ClassMass<S> {
        let m = self.class_members(rho);
        ClassMass {
            balanced: self.mass(&m.balanced),
            even_heavy: self.mass(&m.even_heavy),
            odd_heavy: self.mass(&m.odd_heavy),
        }
    }

    /// `Σ π(I) |I|`.
    pub fn mean_size(&self) -> S {
        self.states
            .iter()
            .zip(&self.pi)
            .fold(S::zero(), |acc, (s, p)| {
                acc + p.clone() * S::from_u64(s.len() as u64)
            })
    }

    /// First pair violating `π(I)P(I,J) = π(J)P(J,I)`, if any. Compared
    /// exactly, so only meaningful for exact scalars.
    pub fn detailed_balance_violation(&self) -> Option<(usize, usize)> {
        for (i, row) in self.kernel.rows.iter().enumerate() {
            for (j, p) in row {
                let lhs = self.pi[i].clone() * p.clone();
                let rhs = self.pi[*j].clone() * self.kernel.get(*j, i);
                if lhs != rhs {
                    return Some((i, *j));
                }
            }
        }
        None
    }

    /// Largest `|Σ_j P(i,j) − 1|` over rows.
    pub fn max_row_defect(&self) -> S {
        (0..self.kernel.len())
            .map(|i| (self.kernel.row_sum(i) - S::one()).abs_value())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }

    /// Largest `|(πP)_j − π_j|`.
    pub fn max_stationarity_defect(&self) -> S {
        let mut out = vec![S::zero(); self.pi.len()];
        self.kernel.left_multiply(&self.pi, &mut out);
        out.iter()
            .zip(&self.pi)
            .map(|(a, b)| (a.clone() - b.clone()).abs_value())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }
}

fn orbit_representatives(
    g: &TorusGraph,
    states: &[OccupancySet],
    index: &HashMap<FixedBitSet, usize>,
) -> Vec<usize> {
    // The symmetry group grows as N·d!·2^d; fall back to all states
    // if that is impractical.
    if g.len() > 4096 || g.dim() > 5 {
        return (0..states.len()).collect();
    }
    let perms = g.symmetries();
    let mut orbit_of = vec![usize::MAX; states.len()];
    let mut reps = Vec::new();
    let mut image = FixedBitSet::with_capacity(g.len());
    for (i, s) in states.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        reps.push(i);
        for p in &perms {
            image.clear();
            image.extend(s.vertices().map(|v| p[v]));
            let j = index[&image];
            orbit_of[j] = i;
        }
    }
    reps
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassMembers {
    pub balanced: Vec<usize>,
    pub even_heavy: Vec<usize>,
    pub odd_heavy: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassMass<S> {
    pub balanced: S,
    pub even_heavy: S,
    pub odd_heavy: S,
}

/// Half the L1 distance between two probability vectors.
pub fn total_variation<S: Scalar>(p: &[S], q: &[S]) -> Result<S> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    for (name, v) in [("p", p), ("q", q)] {
        let total: f64 = v.iter().map(Scalar::to_f64).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Precondition(format!(
                "{name} sums to {total}, not 1"
            )));
        }
    }
    let l1 = p.iter().zip(q).fold(S::zero(), |acc, (a, b)| {
        acc + (a.clone() - b.clone()).abs_value()
    });
    Ok(l1 / S::from_u64(2))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingOptions {
    pub threshold: f64,
    /// Verification window as a multiple of the candidate τ.
    pub window_factor: u64,
    pub step_cap: u64,
}

impl Default for MixingOptions {
    fn default() -> Self {
        MixingOptions {
            threshold: (-1.0f64).exp(),
            window_factor: 4,
            step_cap: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MixingReport {
    /// Smallest τ with worst-start TV ≤ threshold for all checked t > τ.
    pub tau: u64,
    /// Number of steps past τ that were verified.
    pub window: u64,
    pub steps_computed: u64,
    /// Worst-start TV at t = τ (above threshold unless τ = 0).
    pub worst_tv_at_tau: f64,
    /// Largest worst-start TV over (τ, τ + window].
    pub max_tv_in_window: f64,
    pub start_states_checked: usize,
    /// Bound on accumulated rounding error in each TV value.
    pub float_error_bound: f64,
    /// True when every threshold comparison clears the rounding bound.
    pub certified: bool,
}

/// Exact mixing time `max_I min{t0 : TV(P^t(I,·), π) ≤ 1/e ∀ t > t0}`,
/// certified over a window of `window_factor · τ` steps past the last
/// threshold crossing.
pub fn exact_mixing_time<S: Scalar>(
    model: &ExactModel<S>,
    opts: &MixingOptions,
) -> Result<MixingReport> {
    mixing_time_in::<f64, S>(model, opts)
}

/// As [`exact_mixing_time`], iterating distributions in float type `F`.
pub fn mixing_time_in<F, S>(model: &ExactModel<S>, opts: &MixingOptions) -> Result<MixingReport>
where
    F: Float + Scalar,
    S: Scalar,
{
    let kernel: SparseKernel<F> = model.kernel().map(|p| F::from(p.to_f64()).unwrap());
    let pi: Vec<F> = model
        .pi
        .iter()
        .map(|p| F::from(p.to_f64()).unwrap())
        .collect();
    let starts = model.start_representatives();
    let n = pi.len();
    let half = F::from(0.5).unwrap();

    let mut dists: Vec<Vec<F>> = starts
        .iter()
        .map(|&i| {
            let mut d = vec![F::zero(); n];
            d[i] = F::one();
            d
        })
        .collect();
    let mut scratch = vec![F::zero(); n];
    let tv = |d: &[F]| {
        d.iter()
            .zip(&pi)
            .fold(F::zero(), |acc, (a, b)| acc + (*a - *b).abs())
            * half
    };

    let eps = Scalar::to_f64(&F::epsilon());
    let per_step_error = (kernel.max_row_len() as f64 + 1.0) * eps;
    let mut last_bad: Option<(u64, f64)> = None;
    let mut history: Vec<f64> = Vec::new();
    let mut t = 0u64;
    loop {
        let tau = last_bad.map_or(0, |(s, _)| s);
        let window = (opts.window_factor * tau).max(1);
        if t >= tau + window {
            let max_tv_in_window = history[tau as usize..t as usize]
                .iter()
                .fold(0.0f64, |a, &b| a.max(b));
            let float_error_bound = t as f64 * per_step_error;
            let worst_tv_at_tau = last_bad.map_or(history[0], |(_, w)| w);
            let margin_below = opts.threshold - max_tv_in_window;
            let margin_above = if tau > 0 {
                worst_tv_at_tau - opts.threshold
            } else {
                f64::INFINITY
            };
            return Ok(MixingReport {
                tau,
                window,
                steps_computed: t,
                worst_tv_at_tau,
                max_tv_in_window,
                start_states_checked: starts.len(),
                float_error_bound,
                certified: margin_below > float_error_bound && margin_above > float_error_bound,
            });
        }
        if t >= opts.step_cap {
            return Err(Error::BudgetExceeded(format!(
                "mixing time not certified within {} steps (last crossing at t = {tau})",
                opts.step_cap
            )));
        }
        t += 1;
        let mut worst = F::zero();
        for d in dists.iter_mut() {
            kernel.left_multiply(d, &mut scratch);
            std::mem::swap(d, &mut scratch);
            worst = worst.max(tv(d));
        }
        let worst = Scalar::to_f64(&worst);
        history.push(worst);
        if worst > opts.threshold {
            last_bad = Some((t, worst));
        }
    }
}

/// `π(A)/(8π(M))`, or unbounded when `π(M) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum ConductanceBound<S> {
    Finite(S),
    Unbounded,
}

impl<S: Scalar> ConductanceBound<S> {
    pub fn to_f64(&self) -> f64 {
        match self {
            ConductanceBound::Finite(b) => b.to_f64(),
            ConductanceBound::Unbounded => f64::INFINITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BottleneckTriple<S> {
    pub a: Vec<usize>,
    pub m: Vec<usize>,
    pub pi_a: S,
    pub pi_m: S,
}

/// The conductance lower bound `τ ≥ π(A)/(8π(M))` after verifying its
/// preconditions: `π(A) ≤ 1/2`, `A ∩ M = ∅`, and no transition from `A`
/// to the complement of `A ∪ M`.
pub fn conductance_lower_bound<S: Scalar>(
    model: &ExactModel<S>,
    a: &[usize],
    m: &[usize],
) -> Result<(BottleneckTriple<S>, ConductanceBound<S>)> {
    let n = model.num_states();
    let mut tag = vec![0u8; n];
    for &i in a {
        if i >= n {
            return Err(Error::InvalidVertex {
                vertex: i,
                count: n,
            });
        }
        tag[i] = 1;
    }
    for &i in m {
        if i >= n {
            return Err(Error::InvalidVertex {
                vertex: i,
                count: n,
            });
        }
        if tag[i] == 1 {
            return Err(Error::Precondition(format!(
                "state {} lies in both A and M",
                model.states[i]
            )));
        }
        tag[i] = 2;
    }
    let pi_a = model.mass(a);
    let pi_m = model.mass(m);
    if pi_a.clone() * S::from_u64(2) > S::one() {
        return Err(Error::Precondition(format!("π(A) = {pi_a} exceeds 1/2")));
    }
    for &i in a {
        for (j, p) in model.kernel.row(i) {
            if tag[*j] == 0 && *p > S::zero() {
                return Err(Error::Precondition(format!(
                    "transition {} -> {} leaves A without entering M (P = {p})",
                    model.states[i], model.states[*j]
                )));
            }
        }
    }
    let bound = if pi_m == S::zero() {
        ConductanceBound::Unbounded
    } else {
        ConductanceBound::Finite(pi_a.clone() / (S::from_u64(8) * pi_m.clone()))
    };
    Ok((
        BottleneckTriple {
            a: a.to_vec(),
            m: m.to_vec(),
            pi_a,
            pi_m,
        },
        bound,
    ))
}

fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy `H(x) = −x log₂ x − (1−x) log₂(1−x)`, with `H(0) = H(1) = 0`.
pub fn entropy_h(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("entropy argument {x}")));
    }
    Ok(-xlog2x(x) - xlog2x(1.0 - x))
}

/// `H_p(x) = x log₂(p/x) + (1−x) log₂((1−p)/(1−x))`, the Chernoff exponent
/// for a Binomial(n, p) lower tail at `k = xn`.
pub fn entropy_hp(p: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p}")));
    }
    let h = entropy_h(x)?;
    let term = |w: f64, q: f64| if w == 0.0 { 0.0 } else { w * q.log2() };
    Ok(h + term(x, p) + term(1.0 - x, 1.0 - p))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedBinomialCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Compares `Σ_{|A| ≤ cn} λ^{|A|}` over subsets of an n-set with
/// `2^{n(H(c) + c log₂ λ)}`. Only claimed for `c ≤ λ/(1+λ)`.
pub fn weighted_binomial_bound_check(n: u32, c: f64, lambda: f64) -> Result<WeightedBinomialCheck> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::NonPositiveActivity);
    }
    if n > 24 {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds 24")));
    }
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::Domain(format!("fraction c = {c}")));
    }
    if c * (1.0 + lambda) > lambda * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "c = {c} exceeds λ/(1+λ) = {}",
            lambda / (1.0 + lambda)
        )));
    }
    let kmax = (c * n as f64 + 1e-9).floor() as u32;
    let mut binom = 1.0f64;
    let mut lhs = 0.0;
    for k in 0..=kmax.min(n) {
        if k > 0 {
            binom = binom * (n - k + 1) as f64 / k as f64;
        }
        lhs += binom * lambda.powi(k as i32);
    }
    let exponent = n as f64 * (entropy_h(c)? + if c == 0.0 { 0.0 } else { c * lambda.log2() });
    let rhs = exponent.exp2();
    Ok(WeightedBinomialCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12),
    })
}
