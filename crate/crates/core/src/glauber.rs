//! Single-site Glauber dynamics for the hard-core model.
//!
//! One step picks a vertex `v` uniformly, proposes `I ∪ {v}` with
//! probability `λ/(1+λ)` and `I \ {v}` otherwise, and moves only if the
//! proposal is independent.
//!
//! # Random stream
//!
//! Chains draw from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)` and switched to stream `replica`, so replica
//! streams are disjoint and identical on every platform. Each step consumes
//! exactly two `u64` words, in this order:
//!
//! 1. the vertex, `floor(x · N / 2^64)` for the first word `x`;
//! 2. the coin, `(y >> 11) · 2^-53 < λ/(1+λ)` for the second word `y`.
//!
//! Held steps consume the same two words as moves.

use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::hardcore::{can_insert, classify_counts, require_independent, OccupancySet, Rho};
use crate::scalar::Scalar;
use crate::torus::TorusGraph;

/// The generator for `(seed, replica)`.
pub fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

/// Uniform integer in `0..n` by 64-bit multiply-high; one word, no rejection.
#[inline]
pub fn bounded_index<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> usize {
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

/// Uniform `f64` in `[0, 1)` from the top 53 bits of one word.
#[inline]
pub fn unit_interval<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `λ/(1+λ)`.
pub fn insert_probability(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::NonPositiveActivity);
    }
    if lambda.is_infinite() {
        return Ok(1.0);
    }
    Ok(lambda / (1.0 + lambda))
}

/// `P_λ(I, J)` for the Glauber kernel.
pub fn transition_probability<S: Scalar, G: BipartiteGraph + ?Sized>(
    g: &G,
    lambda: &S,
    from: &OccupancySet,
    to: &OccupancySet,
) -> Result<S> {
    if *lambda <= S::zero() {
        return Err(Error::NonPositiveActivity);
    }
    require_independent(g, from)?;
    require_independent(g, to)?;
    let n = S::from_u64(g.vertex_count() as u64);
    let one = S::one();
    let denom = one.clone() + lambda.clone();
    let insert = lambda.clone() / denom.clone() / n.clone();
    let delete = one.clone() / denom / n;
    match from.symmetric_difference_len(to) {
        0 => {
            let mut moves = S::zero();
            for v in 0..g.vertex_count() {
                if from.contains(v) {
                    moves = moves + delete.clone();
                } else if can_insert(g, from, v) {
                    moves = moves + insert.clone();
                }
            }
            Ok(one - moves)
        }
        1 if from.is_subset(to) => Ok(insert),
        1 => Ok(delete),
        _ => Ok(S::zero()),
    }
}

/// What a single update did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Inserted(usize),
    Removed(usize),
    Held(usize),
}

/// In-place Glauber update of `state`.
#[inline]
pub fn step_in_place<G: BipartiteGraph + ?Sized, R: RngCore + ?Sized>(
    g: &G,
    insert_prob: f64,
    state: &mut OccupancySet,
    rng: &mut R,
) -> StepOutcome {
    let v = bounded_index(rng, g.vertex_count());
    let propose_insert = unit_interval(rng) < insert_prob;
    if propose_insert {
        if !state.contains(v) && can_insert(g, state, v) {
            state.insert(g.parity(v), v);
            return StepOutcome::Inserted(v);
        }
    } else if state.remove(g.parity(v), v) {
        return StepOutcome::Removed(v);
    }
    StepOutcome::Held(v)
}

/// One Glauber step from `state`, returning the new state.
pub fn step<G: BipartiteGraph + ?Sized, R: RngCore + ?Sized>(
    g: &G,
    lambda: f64,
    state: &OccupancySet,
    rng: &mut R,
) -> Result<OccupancySet> {
    let p = insert_probability(lambda)?;
    require_independent(g, state)?;
    let mut next = state.clone();
    step_in_place(g, p, &mut next, rng);
    Ok(next)
}

/// `|I1 △ I2| / N`: the smallest ρ for which the move is ρ-local.
pub fn move_locality<G: BipartiteGraph + ?Sized>(g: &G, a: &OccupancySet, b: &OccupancySet) -> f64 {
    a.symmetric_difference_len(b) as f64 / g.vertex_count() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    pub lambda: f64,
    pub seed: u64,
    #[serde(default)]
    pub replica: u64,
    pub steps: u64,
}

impl ChainParams {
    pub fn new(lambda: f64, seed: u64, steps: u64) -> Result<Self> {
        insert_probability(lambda)?;
        Ok(ChainParams {
            lambda,
            seed,
            replica: 0,
            steps,
        })
    }

    pub fn with_replica(mut self, replica: u64) -> Self {
        self.replica = replica;
        self
    }
}

/// One recorded observation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub step: u64,
    pub size: usize,
    pub count_even: usize,
    pub count_odd: usize,
}

impl Sample {
    pub fn of(step: u64, state: &OccupancySet) -> Self {
        Sample {
            step,
            size: state.len(),
            count_even: state.count_even(),
            count_odd: state.count_odd(),
        }
    }

    pub fn balance(&self) -> usize {
        self.count_even.abs_diff(self.count_odd)
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub initial: OccupancySet,
    pub final_state: OccupancySet,
    pub samples: Vec<Sample>,
}

pub const TRAJECTORY_CSV_HEADER: &str = "step,size,countE,countO,class";

impl Trajectory {
    /// CSV with the fixed column order `step,size,countE,countO,class`.
    pub fn to_csv(&self, n: usize, rho: Rho) -> String {
        let mut out = String::with_capacity(32 * (self.samples.len() + 1));
        out.push_str(TRAJECTORY_CSV_HEADER);
        out.push('\n');
        for s in &self.samples {
            let class = classify_counts(s.count_even, s.count_odd, n, rho);
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                s.step, s.size, s.count_even, s.count_odd, class
            );
        }
        out
    }
}

/// Runs `params.steps` updates, recording the counts at step 0 and every
/// `record_every` steps thereafter. Deterministic in `(seed, replica)`.
pub fn simulate(
    g: &TorusGraph,
    params: &ChainParams,
    initial: &OccupancySet,
    record_every: u64,
) -> Result<Trajectory> {
    if record_every == 0 {
        return Err(Error::Precondition("record_every must be positive".into()));
    }
    let p = insert_probability(params.lambda)?;
    require_independent(g, initial)?;
    let mut rng = replica_rng(params.seed, params.replica);
    let mut state = initial.clone();
    let mut samples = vec![Sample::of(0, &state)];
    for t in 1..=params.steps {
        step_in_place(g, p, &mut state, &mut rng);
        if t % record_every == 0 {
            samples.push(Sample::of(t, &state));
        }
    }
    Ok(Trajectory {
        initial: initial.clone(),
        final_state: state,
        samples,
    })
}

/// Runs the chain and hands every post-step state to `observe`.
pub fn run_with<R, F>(
    g: &TorusGraph,
    lambda: f64,
    state: &mut OccupancySet,
    steps: u64,
    rng: &mut R,
    mut observe: F,
) -> Result<()>
where
    R: RngCore + ?Sized,
    F: FnMut(u64, &OccupancySet),
{
    let p = insert_probability(lambda)?;
    for t in 1..=steps {
        step_in_place(g, p, state, rng);
        observe(t, state);
    }
    Ok(())
}

/// `⌈10 · N · ln N⌉`, the conventional burn-in used when none is given.
pub fn default_burn_in(n: usize) -> u64 {
    if n < 2 {
        return 1;
    }
    (10.0 * n as f64 * (n as f64).ln()).ceil() as u64
}

/// State after `steps` updates from the empty set.
pub fn sample_from_empty(
    g: &TorusGraph,
    lambda: f64,
    seed: u64,
    replica: u64,
    steps: u64,
) -> Result<OccupancySet> {
    let p = insert_probability(lambda)?;
    let mut rng = replica_rng(seed, replica);
    let mut state = OccupancySet::empty(g.len());
    for _ in 0..steps {
        step_in_place(g, p, &mut state, &mut rng);
    }
    Ok(state)
}

/// Time average of a per-step observable with a batch-means standard
/// error.
#[derive(Clone, Debug)]
pub struct BatchMeans {
    batch_len: u64,
    current_sum: f64,
    current_len: u64,
    batch_means: Vec<f64>,
    total_sum: f64,
    total_len: u64,
}

impl BatchMeans {
    pub fn new(batch_len: u64) -> Self {
        assert!(batch_len > 0);
        BatchMeans {
            batch_len,
            current_sum: 0.0,
            current_len: 0,
            batch_means: Vec::new(),
            total_sum: 0.0,
            total_len: 0,
        }
    }

    #[inline]
    pub fn push(&mut self, x: f64) {
        self.current_sum += x;
        self.current_len += 1;
        self.total_sum += x;
        self.total_len += 1;
        if self.current_len == self.batch_len {
            self.batch_means
                .push(self.current_sum / self.batch_len as f64);
            self.current_sum = 0.0;
            self.current_len = 0;
        }
    }

    pub fn mean(&self) -> f64 {
        self.total_sum / self.total_len as f64
    }

    pub fn batches(&self) -> usize {
        self.batch_means.len()
    }

    /// Standard error of the mean from complete batches.
    pub fn standard_error(&self) -> f64 {
        let k = self.batch_means.len();
        if k < 2 {
            return f64::NAN;
        }
        let m = self.batch_means.iter().sum::<f64>() / k as f64;
        let var = self
            .batch_means
            .iter()
            .map(|b| (b - m).powi(2))
            .sum::<f64>()
            / (k - 1) as f64;
        (var / k as f64).sqrt()
    }
}
