//! Experiment runner, statistics, independent oracles and the empirical
//! initial-minors probe.
//!
//! The experiment protocol reruns the *same* instance across trials, varying
//! only the randomness stream, and reports one CSV record per trial plus a
//! mean row per strategy. The baby-step/giant-step oracle is a generic
//! discrete-log solver kept deliberately independent of the pipeline so the
//! two can check each other.

use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::ec::{CurveInstance, Point};
use crate::ff::FieldSpec;
use crate::matfq::MatrixFq;
use crate::pipeline::{sample_round_a, solve, LasVegasConfig, SolveOutcome, Strategy};
use crate::problem_l::next_combination;

#[derive(Clone, Debug)]
pub enum HarnessError {
    OrderTooLarge { order: u64, bound: u64 },
    TrialExhausted { strategy: Strategy, trial: u64 },
    Budget(String),
    Pipeline(String),
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::OrderTooLarge { order, bound } => {
                write!(f, "group order {order} exceeds the oracle bound {bound}")
            }
            HarnessError::TrialExhausted { strategy, trial } => {
                write!(
                    f,
                    "trial {trial} with strategy {strategy} exhausted its iteration budget"
                )
            }
            HarnessError::Budget(s) => write!(f, "budget exceeded: {s}"),
            HarnessError::Pipeline(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for HarnessError {}

const BSGS_MAX_ORDER: u64 = 1 << 30;

/// Generic baby-step/giant-step discrete logarithm: the unique `m` in
/// `[1, p)` with `mP = Q`, found in `O(sqrt(p))` group operations. This is
/// the ground-truth oracle for the pipeline.
pub fn bsgs_dlog(instance: &CurveInstance) -> Result<u64, HarnessError> {
    let p = instance.order;
    if p > BSGS_MAX_ORDER {
        return Err(HarnessError::OrderTooLarge {
            order: p,
            bound: BSGS_MAX_ORDER,
        });
    }
    let n = (p as f64).sqrt().ceil() as u64;
    let curve = &instance.curve;

    let encode = |pt: &Point| pt.affine().map(|(x, y)| (x.value(), y.value()));
    let mut baby: HashMap<Option<(u64, u64)>, u64> = HashMap::with_capacity(n as usize);
    let mut walk = Point::Infinity;
    for j in 0..n {
        baby.entry(encode(&walk)).or_insert(j);
        walk = curve.add(&walk, &instance.p).expect("P is valid");
    }
    // giant steps: Q - i * (nP)
    let giant_step = curve.neg(&curve.scalar_mul(&instance.p, n).expect("P is valid"));
    let mut gamma = instance.q;
    for i in 0..=n {
        if let Some(&j) = baby.get(&encode(&gamma)) {
            let m = ((i as u128 * n as u128 + j as u128) % p as u128) as u64;
            if m != 0 {
                return Ok(m);
            }
        }
        gamma = curve.add(&gamma, &giant_step).expect("valid points");
    }
    unreachable!("prime-order instances always have a logarithm")
}

/// One completed trial.
#[derive(Clone, Debug)]
pub struct ExperimentRecord {
    /// Field order `q`, decimal.
    pub field: u64,
    /// `prime` or `binary`.
    pub kind: &'static str,
    /// log2 of the group order.
    pub log2p: f64,
    pub n_prime: usize,
    pub k: usize,
    pub strategy: Strategy,
    pub trial: u64,
    pub iterations: u64,
    pub resamples: u64,
    pub wall_ms: u64,
}

pub const CSV_HEADER: &str =
    "field,kind,log2p,nprime,k,strategy,trial,iterations,resamples,wall_ms";

impl ExperimentRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.2},{},{},{},{},{},{},{}",
            self.field,
            self.kind,
            self.log2p,
            self.n_prime,
            self.k,
            self.strategy,
            self.trial,
            self.iterations,
            self.resamples,
            self.wall_ms
        )
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub trials: u64,
    pub strategies: Vec<Strategy>,
    pub seed: u64,
    pub workers: usize,
    pub n_prime: usize,
    pub max_iterations: u64,
}

impl ExperimentConfig {
    pub fn new(n_prime: usize) -> Self {
        ExperimentConfig {
            trials: 40,
            strategies: vec![Strategy::AllTwoMinors, Strategy::Schur],
            seed: 0,
            workers: 1,
            n_prime,
            max_iterations: 1_000_000,
        }
    }
}

fn field_descriptor(spec: FieldSpec) -> (u64, &'static str) {
    match spec {
        FieldSpec::Prime { p } => (p, "prime"),
        FieldSpec::Binary { m, .. } => (1u64 << m, "binary"),
    }
}

/// Derive a per-trial seed; fixed mixing constants keep the derivation
/// stable across runs and platforms.
fn trial_seed(base: u64, strategy_index: usize, trial: u64) -> u64 {
    base.wrapping_add((strategy_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(trial.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Rerun the same instance `trials` times per strategy, varying only the
/// randomness stream. Errors out if any trial exhausts its budget: the
/// caller should raise `max_iterations` rather than average over censored
/// data.
pub fn run_experiment(
    instance: &CurveInstance,
    config: &ExperimentConfig,
) -> Result<Vec<ExperimentRecord>, HarnessError> {
    let (field, kind) = field_descriptor(instance.curve.field());
    let log2p = (instance.order as f64).log2();
    let mut records = Vec::with_capacity((config.trials as usize) * config.strategies.len());
    for (si, &strategy) in config.strategies.iter().enumerate() {
        for trial in 0..config.trials {
            let mut solve_config = LasVegasConfig::new(config.n_prime);
            solve_config.strategy = strategy;
            solve_config.seed = trial_seed(config.seed, si, trial);
            solve_config.workers = config.workers;
            solve_config.max_iterations = config.max_iterations;
            let started = std::time::Instant::now();
            let report = solve(instance, &solve_config)
                .map_err(|e| HarnessError::Pipeline(e.to_string()))?;
            let wall_ms = started.elapsed().as_millis() as u64;
            let solution = match report.outcome {
                SolveOutcome::Solved(s) => s,
                SolveOutcome::Exhausted => {
                    return Err(HarnessError::TrialExhausted { strategy, trial })
                }
            };
            records.push(ExperimentRecord {
                field,
                kind,
                log2p,
                n_prime: config.n_prime,
                k: solve_config.k(),
                strategy,
                trial,
                iterations: solution.iterations,
                resamples: report.total_resamples,
                wall_ms,
            });
        }
    }
    Ok(records)
}

/// Mean iterations per strategy, in first-appearance order.
pub fn mean_iterations(records: &[ExperimentRecord]) -> Vec<(Strategy, f64)> {
    let mut order: Vec<Strategy> = Vec::new();
    let mut sums: HashMap<String, (f64, u64)> = HashMap::new();
    for r in records {
        let key = r.strategy.to_string();
        if !sums.contains_key(&key) {
            order.push(r.strategy);
        }
        let entry = sums.entry(key).or_insert((0.0, 0));
        entry.0 += r.iterations as f64;
        entry.1 += 1;
    }
    order
        .into_iter()
        .map(|s| {
            let (sum, n) = sums[&s.to_string()];
            (s, sum / n as f64)
        })
        .collect()
}

/// Render the fixed-schema CSV: header, one row per record, then one `mean`
/// summary row per strategy.
pub fn experiment_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    for (strategy, mean) in mean_iterations(records) {
        let template = records
            .iter()
            .find(|r| r.strategy == strategy)
            .expect("non-empty group");
        out.push_str(&format!(
            "{},{},{:.2},{},{},{},mean,{:.2},,\n",
            template.field,
            template.kind,
            template.log2p,
            template.n_prime,
            template.k,
            strategy,
            mean
        ));
    }
    out
}

/// Where census sample matrices come from.
#[derive(Clone, Debug)]
pub enum CensusSource {
    /// Uniform random k x k matrices over the field.
    Random { field: FieldSpec },
    /// `A` blocks harvested from real pipeline rounds of this instance
    /// (k must be 3 n').
    Pipeline { instance: Box<CurveInstance> },
}

/// Zero-minor statistics over sampled matrices: everything needed to probe
/// whether a small distinguished set of minors could certify the absence of
/// zero minors.
#[derive(Clone, Debug)]
pub struct MinorCensus {
    pub k: usize,
    pub field: String,
    pub samples: u64,
    /// Total zero minors of order `r` across all samples, at index `r - 1`.
    pub per_order_zero_total: Vec<u64>,
    pub matrices_with_zero: u64,
    /// Smallest order of any zero minor seen, across all samples.
    pub min_witness_order: Option<usize>,
}

impl MinorCensus {
    pub fn fraction_with_zero(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.matrices_with_zero as f64 / self.samples as f64
        }
    }

    /// Mean zero-minor count of each order per sampled matrix; bounded by
    /// `C(k, r)^2` for order `r`.
    pub fn mean_per_order(&self) -> Vec<f64> {
        self.per_order_zero_total
            .iter()
            .map(|&t| {
                if self.samples == 0 {
                    0.0
                } else {
                    t as f64 / self.samples as f64
                }
            })
            .collect()
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "minor census: k={} field={} samples={}\n",
            self.k, self.field, self.samples
        ));
        out.push_str(&format!(
            "matrices with a zero minor: {} ({:.4})\n",
            self.matrices_with_zero,
            self.fraction_with_zero()
        ));
        match self.min_witness_order {
            Some(r) => out.push_str(&format!("smallest witness order observed: {r}\n")),
            None => out.push_str("smallest witness order observed: none\n"),
        }
        for (i, mean) in self.mean_per_order().iter().enumerate() {
            out.push_str(&format!(
                "order {:>2}: total {} mean {:.4}\n",
                i + 1,
                self.per_order_zero_total[i],
                mean
            ));
        }
        out
    }
}

/// Count the zero minors of every order `1..=k` by full enumeration.
pub fn count_zero_minors_by_order(a: &MatrixFq) -> Vec<u64> {
    let k = a.rows();
    assert_eq!(k, a.cols(), "census matrices are square");
    let mut counts = vec![0u64; k];
    for size in 1..=k {
        let mut alpha: Vec<usize> = (0..size).collect();
        loop {
            let mut beta: Vec<usize> = (0..size).collect();
            loop {
                if a.minor(&alpha, &beta).expect("in range").is_zero() {
                    counts[size - 1] += 1;
                }
                if !next_combination(&mut beta, k) {
                    break;
                }
            }
            if !next_combination(&mut alpha, k) {
                break;
            }
        }
    }
    counts
}

const CENSUS_MAX_K: usize = 12;

/// Sample matrices and tabulate their zero minors exhaustively.
pub fn probe_minors(
    k: usize,
    samples: u64,
    source: &CensusSource,
    seed: u64,
) -> Result<MinorCensus, HarnessError> {
    if k == 0 || k > CENSUS_MAX_K {
        return Err(HarnessError::Budget(format!(
            "exhaustive minor enumeration is limited to 1 <= k <= {CENSUS_MAX_K}, got {k}"
        )));
    }
    let field = match source {
        CensusSource::Random { field } => *field,
        CensusSource::Pipeline { instance } => {
            if !k.is_multiple_of(3) {
                return Err(HarnessError::Budget(format!(
                    "pipeline-sourced censuses need k divisible by 3, got {k}"
                )));
            }
            instance.curve.field()
        }
    };
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut census = MinorCensus {
        k,
        field: field.to_string(),
        samples: 0,
        per_order_zero_total: vec![0; k],
        matrices_with_zero: 0,
        min_witness_order: None,
    };
    let mut round: u64 = 0;
    while census.samples < samples {
        let a = match source {
            CensusSource::Random { field } => MatrixFq::random(*field, k, k, &mut rng),
            CensusSource::Pipeline { instance } => {
                let mut config = LasVegasConfig::new(k / 3);
                config.seed = seed;
                config
                    .validate(instance)
                    .map_err(|e| HarnessError::Pipeline(e.to_string()))?;
                let a = loop {
                    match sample_round_a(instance, &config, round) {
                        Some(a) => break a,
                        None => round += 1,
                    }
                };
                round += 1;
                a
            }
        };
        let counts = count_zero_minors_by_order(&a);
        let witness = counts.iter().position(|&c| c > 0).map(|i| i + 1);
        if witness.is_some() {
            census.matrices_with_zero += 1;
        }
        census.min_witness_order = match (census.min_witness_order, witness) {
            (None, w) => w,
            (Some(a), None) => Some(a),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        for (i, c) in counts.into_iter().enumerate() {
            census.per_order_zero_total[i] += c;
        }
        census.samples += 1;
    }
    Ok(census)
}
