use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use torus_hardcore::cutsets::{
    classify_even_odd, gamma_family_for, is_trivial, isoperimetry_check, sample_even_sets,
    size_identity, verify_contour_properties, ParityLabels,
};
use torus_hardcore::exact::{class_summary, conductance_lower_bound, ClassMass, ConductanceBound};
use torus_hardcore::glauber::{bounded_index, replica_rng, run_with, Sample};
use torus_hardcore::hardcore::{classify_counts, OccupancyRecord};
use torus_hardcore::peierls::{
    choose_direction, coarse_witness_u, flow_out_sum, interior_shift, is_approximation, q_sets,
};
use torus_hardcore::{
    classify, exact_mixing_time, Approximation, BalanceClass, Direction, ExactModelQ, ExactValue,
    FlowLayout, MixingOptions, MixingReport, OccupancySet, Parity, Rational, Rho, TorusGraph,
    Trajectory,
};

use crate::config::{ExperimentConfig, Mode};
use crate::error::CliError;

/// Free-site limit for the flow identity sweep.
pub const FLOWCHECK_MAX_FREE: usize = 20;

/// Interior vertices listed per cutset.
const INTERIOR_SAMPLE: usize = 8;

/// Mode-specific results plus an optional table (trajectory or hitting
/// times) for CSV output.
pub struct Outcome {
    pub results: serde_json::Value,
    pub table: Option<String>,
}

pub fn run_mode(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    match cfg.mode {
        Mode::Exact => run_exact(cfg),
        Mode::Sample => run_sample(cfg),
        Mode::Mixing => run_mixing(cfg),
        Mode::Escape => run_escape(cfg),
        Mode::Cutsets => run_cutsets(cfg),
        Mode::Peierls => run_peierls(cfg),
        Mode::Isoperimetry => run_isoperimetry(cfg),
        Mode::Flowcheck => run_flowcheck(cfg),
    }
}

fn to_value<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("results serialize to JSON")
}

fn json_only(results: serde_json::Value) -> Result<Outcome, CliError> {
    Ok(Outcome {
        results,
        table: None,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ClassMassOut {
    balanced: ExactValue,
    even_heavy: ExactValue,
    odd_heavy: ExactValue,
}

impl From<&ClassMass<Rational>> for ClassMassOut {
    fn from(m: &ClassMass<Rational>) -> Self {
        ClassMassOut {
            balanced: (&m.balanced).into(),
            even_heavy: (&m.even_heavy).into(),
            odd_heavy: (&m.odd_heavy).into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ConductanceOut {
    a: BalanceClass,
    m: BalanceClass,
    pi_a: Option<ExactValue>,
    pi_m: Option<ExactValue>,
    /// `None` when `π(M) = 0` or the preconditions fail.
    bound: Option<ExactValue>,
    /// `τ / bound`.
    ratio: Option<f64>,
    /// Why the bound does not apply, with the offending transition.
    error: Option<String>,
}

fn conductance_entry(
    model: &ExactModelQ,
    rho: Rho,
    a_class: BalanceClass,
    tau: u64,
) -> Result<ConductanceOut, torus_hardcore::Error> {
    let members = model.class_members(rho);
    let a = match a_class {
        BalanceClass::EvenHeavy => &members.even_heavy,
        BalanceClass::OddHeavy => &members.odd_heavy,
        BalanceClass::Balanced => &members.balanced,
    };
    let (triple, bound) = conductance_lower_bound(model, a, &members.balanced)?;
    let (bound, ratio) = match &bound {
        ConductanceBound::Finite(b) => (Some(b.into()), Some(tau as f64 / bound.to_f64())),
        ConductanceBound::Unbounded => (None, None),
    };
    Ok(ConductanceOut {
        a: a_class,
        m: BalanceClass::Balanced,
        pi_a: Some((&triple.pi_a).into()),
        pi_m: Some((&triple.pi_m).into()),
        bound,
        ratio,
        error: None,
    })
}

fn conductance_or_error(
    model: &ExactModelQ,
    rho: Rho,
    a_class: BalanceClass,
    tau: u64,
) -> ConductanceOut {
    conductance_entry(model, rho, a_class, tau).unwrap_or_else(|e| ConductanceOut {
        a: a_class,
        m: BalanceClass::Balanced,
        pi_a: None,
        pi_m: None,
        bound: None,
        ratio: None,
        error: Some(e.to_string()),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ExactResults {
    #[serde(rename = "L")]
    side: usize,
    d: usize,
    lambda: ExactValue,
    rho: Rho,
    num_states: usize,
    #[serde(rename = "Z")]
    z: ExactValue,
    class_mass: ClassMassOut,
    mean_size: ExactValue,
    mixing_time: MixingReport,
    conductance_bounds: Vec<ConductanceOut>,
}

fn build_model(cfg: &ExperimentConfig) -> Result<(TorusGraph, ExactModelQ), CliError> {
    let g = cfg.torus()?;
    let model = ExactModelQ::build(&g, cfg.lambda.as_scalar::<Rational>())?;
    Ok((g, model))
}

pub fn run_exact(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let (g, model) = build_model(cfg)?;
    let lambda: Rational = cfg.lambda.as_scalar();
    let summary = class_summary(&g, &lambda, cfg.rho)?;
    let mixing = exact_mixing_time(&model, &MixingOptions::default())?;
    let tau = mixing.tau;
    let results = ExactResults {
        side: cfg.side,
        d: cfg.d,
        lambda: cfg.lambda.ratio().into(),
        rho: cfg.rho,
        num_states: model.num_states(),
        z: model.partition_function().into(),
        class_mass: (&summary.mass).into(),
        mean_size: (&summary.mean_size).into(),
        mixing_time: mixing,
        conductance_bounds: [BalanceClass::EvenHeavy, BalanceClass::OddHeavy]
            .into_iter()
            .map(|a| conductance_or_error(&model, cfg.rho, a, tau))
            .collect(),
    };
    json_only(to_value(&results))
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct MixingResults {
    num_states: usize,
    mixing_time: MixingReport,
    conductance: ConductanceOut,
}

pub fn run_mixing(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let (_, model) = build_model(cfg)?;
    let mixing = exact_mixing_time(&model, &MixingOptions::default())?;
    let conductance = conductance_entry(&model, cfg.rho, BalanceClass::EvenHeavy, mixing.tau)?;
    json_only(to_value(&MixingResults {
        num_states: model.num_states(),
        mixing_time: mixing,
        conductance,
    }))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ReplicaFrequencies {
    replica: u64,
    balanced: f64,
    even_heavy: f64,
    odd_heavy: f64,
    mean_size: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Estimate {
    mean: f64,
    /// Across replicas; absent with a single replica.
    standard_error: Option<f64>,
}

fn estimate(values: impl Iterator<Item = f64> + Clone) -> Estimate {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let standard_error = (n >= 2.0).then(|| {
        let var = values.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    });
    Estimate {
        mean,
        standard_error,
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct SampleResults {
    burn_in: u64,
    steps: u64,
    balanced: Estimate,
    even_heavy: Estimate,
    odd_heavy: Estimate,
    mean_size: Estimate,
    replicas: Vec<ReplicaFrequencies>,
}

fn sample_replica(
    g: &TorusGraph,
    cfg: &ExperimentConfig,
    replica: u64,
    burn_in: u64,
    record: bool,
) -> Result<(ReplicaFrequencies, Option<Trajectory>), CliError> {
    let n = g.len();
    let lambda = cfg.lambda_f64();
    let mut rng = replica_rng(cfg.seed, replica);
    let mut state = OccupancySet::empty(n);
    run_with(g, lambda, &mut state, burn_in, &mut rng, |_, _| {})?;
    let initial = state.clone();
    let mut samples = vec![Sample::of(0, &state)];
    let mut class_counts = [0u64; 3];
    let mut size_total = 0u64;
    run_with(g, lambda, &mut state, cfg.steps, &mut rng, |t, s| {
        let slot = match classify_counts(s.count_even(), s.count_odd(), n, cfg.rho) {
            BalanceClass::Balanced => 0,
            BalanceClass::EvenHeavy => 1,
            BalanceClass::OddHeavy => 2,
        };
        class_counts[slot] += 1;
        size_total += s.len() as u64;
        if record && t % cfg.record_every == 0 {
            samples.push(Sample::of(t, s));
        }
    })?;
    let steps = cfg.steps.max(1) as f64;
    Ok((
        ReplicaFrequencies {
            replica,
            balanced: class_counts[0] as f64 / steps,
            even_heavy: class_counts[1] as f64 / steps,
            odd_heavy: class_counts[2] as f64 / steps,
            mean_size: size_total as f64 / steps,
        },
        record.then(|| Trajectory {
            initial,
            final_state: state,
            samples,
        }),
    ))
}

/// Class frequencies per replica after burn-in; replica 0's trajectory is
/// kept for CSV output, with step 0 the first post-burn-in state.
pub fn run_sample(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    if cfg.steps == 0 {
        return Err(CliError::Precondition("sample needs steps > 0".into()));
    }
    let g = cfg.torus()?;
    let burn_in = cfg.burn_in_for(g.len());
    let record = cfg.format == crate::config::Format::Csv;
    let mut runs: Vec<(ReplicaFrequencies, Option<Trajectory>)> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| sample_replica(&g, cfg, r, burn_in, record && r == 0))
        .collect::<Result<_, _>>()?;
    let freqs: Vec<ReplicaFrequencies> = runs.iter().map(|(f, _)| *f).collect();
    let results = SampleResults {
        burn_in,
        steps: cfg.steps,
        balanced: estimate(freqs.iter().map(|f| f.balanced)),
        even_heavy: estimate(freqs.iter().map(|f| f.even_heavy)),
        odd_heavy: estimate(freqs.iter().map(|f| f.odd_heavy)),
        mean_size: estimate(freqs.iter().map(|f| f.mean_size)),
        replicas: freqs,
    };
    let table = runs[0].1.take().map(|t| t.to_csv(g.len(), cfg.rho));
    Ok(Outcome {
        results: to_value(&results),
        table,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HittingTime {
    pub replica: u64,
    /// Steps until the chain first enters OddHeavy; absent when censored.
    pub hitting_time: Option<u64>,
    pub censored: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct EscapeResults {
    step_cap: u64,
    censored: usize,
    median: Option<u64>,
    lower_quartile: Option<u64>,
    upper_quartile: Option<u64>,
    replicas: Vec<HittingTime>,
}

/// Nearest-rank quantile with censored runs ranked last; `None` when the
/// rank falls on a censored run.
pub fn censored_quantile(times: &[Option<u64>], p: f64) -> Option<u64> {
    if times.is_empty() {
        return None;
    }
    let mut sorted: Vec<u64> = times.iter().map(|t| t.unwrap_or(u64::MAX)).collect();
    sorted.sort_unstable();
    let rank = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Some(sorted[rank - 1]).filter(|&t| t != u64::MAX)
}

fn escape_replica(
    g: &TorusGraph,
    cfg: &ExperimentConfig,
    replica: u64,
) -> Result<HittingTime, CliError> {
    let mut state = OccupancySet::parity_class(g, Parity::Even);
    let mut rng = replica_rng(cfg.seed, replica);
    let n = g.len();
    let mut hit = None;
    if classify(g, &state, cfg.rho) == BalanceClass::OddHeavy {
        hit = Some(0);
    }
    let p = torus_hardcore::glauber::insert_probability(cfg.lambda_f64())?;
    let mut t = 0;
    while hit.is_none() && t < cfg.steps {
        torus_hardcore::glauber::step_in_place(g, p, &mut state, &mut rng);
        t += 1;
        if classify_counts(state.count_even(), state.count_odd(), n, cfg.rho)
            == BalanceClass::OddHeavy
        {
            hit = Some(t);
        }
    }
    Ok(HittingTime {
        replica,
        hitting_time: hit,
        censored: hit.is_none(),
    })
}

/// Hitting times of OddHeavy from the all-even set, capped at `steps`.
pub fn run_escape(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let g = cfg.torus()?;
    let runs: Vec<HittingTime> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| escape_replica(&g, cfg, r))
        .collect::<Result<_, _>>()?;
    let times: Vec<Option<u64>> = runs.iter().map(|h| h.hitting_time).collect();
    let mut table = String::from("replica,hittingTime,censored\n");
    for h in &runs {
        let t = h.hitting_time.map(|t| t.to_string()).unwrap_or_default();
        table.push_str(&format!("{},{},{}\n", h.replica, t, h.censored));
    }
    let results = EscapeResults {
        step_cap: cfg.steps,
        censored: runs.iter().filter(|h| h.censored).count(),
        median: censored_quantile(&times, 0.5),
        lower_quartile: censored_quantile(&times, 0.25),
        upper_quartile: censored_quantile(&times, 0.75),
        replicas: runs,
    };
    Ok(Outcome {
        results: to_value(&results),
        table: Some(table),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CutsetOut {
    size: usize,
    w_e: usize,
    w_o: usize,
    enveloping: bool,
    trivial: bool,
    interior_size: usize,
    /// Coordinates of the first few interior vertices.
    interior_sample: Vec<Vec<usize>>,
    size_identity: bool,
    properties_hold: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CutsetsResults {
    #[serde(rename = "L")]
    side: usize,
    d: usize,
    occupied: usize,
    labels: ParityLabels,
    family_parity: Parity,
    cutsets: Vec<CutsetOut>,
}

fn read_record(cfg: &ExperimentConfig) -> Result<(TorusGraph, OccupancySet), CliError> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| CliError::Precondition("no input record given".into()))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let record: OccupancyRecord = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.clone(),
        source,
    })?;
    let (g, set) = record.decode()?;
    torus_hardcore::hardcore::require_independent(&g, &set)?;
    Ok((g, set))
}

/// Γ(I) for a recorded state, using the Even decomposition when it applies.
pub fn run_cutsets(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let (g, set) = read_record(cfg)?;
    let labels = classify_even_odd(&g, &set)?;
    let parity = if labels.even {
        Parity::Even
    } else {
        Parity::Odd
    };
    let family = gamma_family_for(&g, &set, parity)?;
    let cutsets = family
        .cutsets
        .iter()
        .map(|gamma| {
            let (w_e, w_o) = gamma.w_counts(&g);
            let interior = gamma.interior();
            Ok(CutsetOut {
                size: gamma.size(),
                w_e,
                w_o,
                enveloping: gamma.enveloping,
                trivial: is_trivial(&g, gamma),
                interior_size: interior.count_ones(..),
                interior_sample: interior
                    .ones()
                    .take(INTERIOR_SAMPLE)
                    .map(|v| g.coords(v))
                    .collect(),
                size_identity: size_identity(&g, gamma)?.holds,
                properties_hold: verify_contour_properties(&g, &set, gamma).all_hold(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    json_only(to_value(&CutsetsResults {
        side: g.side(),
        d: g.dim(),
        occupied: set.len(),
        labels,
        family_parity: parity,
        cutsets,
    }))
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct PeierlsCutset {
    size: usize,
    w_e: usize,
    w_o: usize,
    chosen_s: i32,
    fallback: bool,
    free_sites: usize,
    q_even: usize,
    q_odd: usize,
    approximation_holds: bool,
    shift_size_preserved: bool,
    coarse_u: usize,
    /// Absent when `|W^s|` exceeds the expansion budget.
    flow_sum_exact: Option<ExactValue>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct PeierlsResults {
    burn_in: u64,
    sample: OccupancyRecord,
    occupied: usize,
    cutsets: Vec<PeierlsCutset>,
}

fn peierls_cutset(
    g: &TorusGraph,
    set: &OccupancySet,
    gamma: &torus_hardcore::Cutset,
    lambda: &Rational,
) -> Result<PeierlsCutset, CliError> {
    let (w_e, w_o) = gamma.w_counts(g);
    let a = Approximation::of_cutset(g, gamma);
    let choice = choose_direction(g, gamma, &a)?;
    let s = Direction::new(choice.direction, g.dim())?;
    let shift = interior_shift(g, set, gamma, s)?;
    let layout = FlowLayout::new(g, gamma, &a, s);
    let flow = match flow_out_sum(lambda, &layout) {
        Ok(v) => Some((&v).into()),
        Err(torus_hardcore::Error::BudgetExceeded(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let (q_e, q_o) = q_sets(g, &a);
    Ok(PeierlsCutset {
        size: gamma.size(),
        w_e,
        w_o,
        chosen_s: choice.direction,
        fallback: choice.fallback,
        free_sites: layout.free_len(),
        q_even: q_e.count_ones(..),
        q_odd: q_o.count_ones(..),
        approximation_holds: is_approximation(g, &a, gamma).holds(),
        shift_size_preserved: shift.shifted.len() == set.len(),
        coarse_u: coarse_witness_u(g, gamma)?.u.len(),
        flow_sum_exact: flow,
    })
}

/// Samples an even state by Glauber burn-in from the empty set and runs the
/// shift/flow machinery on each of its contours.
pub fn run_peierls(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let g = cfg.torus()?;
    let burn_in = cfg.burn_in_for(g.len());
    let set = sample_even_sets(&g, 1, cfg.seed, &[cfg.lambda_f64()], burn_in)?.remove(0);
    let family = gamma_family_for(&g, &set, Parity::Even)?;
    let lambda: Rational = cfg.lambda.as_scalar();
    let cutsets = family
        .cutsets
        .par_iter()
        .map(|gamma| peierls_cutset(&g, &set, gamma, &lambda))
        .collect::<Result<Vec<_>, _>>()?;
    json_only(to_value(&PeierlsResults {
        burn_in,
        sample: OccupancyRecord::new(&g, &set),
        occupied: set.len(),
        cutsets,
    }))
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Counterexample {
    vertices: Vec<usize>,
    boundary: usize,
    edge_boundary: usize,
    bound: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct IsoperimetryResults {
    samples: usize,
    /// Subsets with `|∂_ext A|` below the bound.
    vertex_failures: usize,
    /// Subsets with `|∇(A)|` below the bound.
    edge_failures: usize,
    first_vertex_failure: Option<Counterexample>,
}

/// Uniform random subsets of size up to `N/2`.
pub fn run_isoperimetry(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let g = cfg.torus()?;
    let n = g.len();
    let mut rng = replica_rng(cfg.seed, 0);
    let mut order: Vec<usize> = (0..n).collect();
    let mut results = IsoperimetryResults {
        samples: cfg.samples,
        vertex_failures: 0,
        edge_failures: 0,
        first_vertex_failure: None,
    };
    for _ in 0..cfg.samples {
        let k = bounded_index(&mut rng, n / 2 + 1);
        for i in 0..k {
            let j = i + bounded_index(&mut rng, n - i);
            order.swap(i, j);
        }
        let mut vertices = order[..k].to_vec();
        vertices.sort_unstable();
        let set = torus_hardcore::graph::bitset_from(n, vertices.iter().copied());
        let check = isoperimetry_check(&g, &set)?;
        if !check.edge_holds {
            results.edge_failures += 1;
        }
        if !check.holds {
            results.vertex_failures += 1;
            results.first_vertex_failure.get_or_insert(Counterexample {
                vertices,
                boundary: check.boundary,
                edge_boundary: check.edge_boundary,
                bound: check.bound,
            });
        }
    }
    json_only(to_value(&results))
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct FlowFailure {
    set: usize,
    cutset: usize,
    direction: i32,
    value: ExactValue,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct FlowcheckResults {
    burn_in: u64,
    sets: usize,
    cutsets: usize,
    /// (cutset, direction) pairs whose flow was expanded.
    checked: usize,
    equal_to_one: usize,
    /// Pairs with more than the free-site limit.
    skipped: usize,
    max_free: usize,
    failures: Vec<FlowFailure>,
}

/// The exact flow identity over every cutset and direction of `replicas`
/// sampled even states.
pub fn run_flowcheck(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let g = cfg.torus()?;
    let burn_in = cfg.burn_in_for(g.len());
    let sets = sample_even_sets(
        &g,
        cfg.replicas as usize,
        cfg.seed,
        &[cfg.lambda_f64()],
        burn_in,
    )?;
    let lambda: Rational = cfg.lambda.as_scalar();
    let one = Rational::from_integer(1.into());
    let per_set: Vec<(usize, usize, usize, Vec<FlowFailure>)> = sets
        .par_iter()
        .enumerate()
        .map(|(i, set)| {
            let family = gamma_family_for(&g, set, Parity::Even)?;
            let (mut checked, mut skipped, mut failures) = (0, 0, Vec::new());
            for (j, gamma) in family.cutsets.iter().enumerate() {
                let a = Approximation::of_cutset(&g, gamma);
                for s in Direction::all(g.dim()) {
                    let layout = FlowLayout::new(&g, gamma, &a, s);
                    if layout.free_len() > FLOWCHECK_MAX_FREE {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    let value = flow_out_sum(&lambda, &layout)?;
                    if value != one {
                        failures.push(FlowFailure {
                            set: i,
                            cutset: j,
                            direction: s.value(),
                            value: (&value).into(),
                        });
                    }
                }
            }
            Ok((family.len(), checked, skipped, failures))
        })
        .collect::<Result<_, CliError>>()?;
    let mut results = FlowcheckResults {
        burn_in,
        sets: sets.len(),
        cutsets: 0,
        checked: 0,
        equal_to_one: 0,
        skipped: 0,
        max_free: FLOWCHECK_MAX_FREE,
        failures: Vec::new(),
    };
    for (cutsets, checked, skipped, failures) in per_set {
        results.cutsets += cutsets;
        results.checked += checked;
        results.skipped += skipped;
        results.equal_to_one += checked - failures.len();
        results.failures.extend(failures);
    }
    json_only(to_value(&results))
}
