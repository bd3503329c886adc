//! The Las Vegas reduction end to end: random multipliers -> curve points ->
//! monomial matrix `M` -> left kernel -> zero-minor search -> recovery of
//! the discrete logarithm.
//!
//! Rounds are independent and embarrassingly parallel. Every round draws its
//! randomness from a stream derived from `(seed, round index)`, so a round's
//! transcript depends only on those two values, never on the worker that ran
//! it; with one worker the whole run is bit-reproducible. Emitted solutions
//! are always verified against `Q = mP` before they leave this module — a
//! wrong answer is structurally impossible, only a slow one.

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::ec::{CurveInstance, Point};
use crate::ff::{FieldElement, FieldSpec};
use crate::matfq::{normalize_kernel, MatrixFq, NormalizeOutcome};
use crate::problem_l::{
    all_two_minors, minor_to_certificate, scan_entries, schur_cascade, CascadeOptions, ScanOptions,
    ZeroVectorCertificate,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Entries,
    AllTwoMinors,
    Schur,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Strategy::Entries => "entries",
            Strategy::AllTwoMinors => "all2minors",
            Strategy::Schur => "schur",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "entries" => Ok(Strategy::Entries),
            "all2minors" => Ok(Strategy::AllTwoMinors),
            "schur" => Ok(Strategy::Schur),
            other => Err(format!(
                "unknown strategy {other:?} (expected entries|all2minors|schur)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub enum PipelineError {
    BadConfig(String),
    Io(String),
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::BadConfig(s) => write!(f, "bad configuration: {s}"),
            PipelineError::Io(s) => write!(f, "i/o failure: {s}"),
        }
    }
}

impl std::error::Error for PipelineError {}

/// Tunables for one solve. `k = 3 n'` rows select the curve degree; the
/// matrix gets `s` rows of multiples of `P` and `t` rows of negated
/// multiples of `Q`, with `s != t` and `s + t = 2k`.
#[derive(Clone, Debug)]
pub struct LasVegasConfig {
    pub n_prime: usize,
    pub s: usize,
    pub t: usize,
    pub max_iterations: u64,
    pub seed: u64,
    pub strategy: Strategy,
    pub workers: usize,
    /// Cascade depth; `None` is the default `floor(k/2)`.
    pub cascade_max_stage: Option<usize>,
    /// Write each round's raw kernel into this directory.
    pub dump_kernels: Option<PathBuf>,
    /// Collect a JSON-lines round transcript in the report.
    pub transcript: bool,
}

impl LasVegasConfig {
    /// Defaults for a given curve degree: near-even row split `s = k + 1`,
    /// `t = k - 1` (the split must be unequal, and this is the least-unequal
    /// choice), Schur strategy, one worker.
    pub fn new(n_prime: usize) -> Self {
        let k = 3 * n_prime;
        LasVegasConfig {
            n_prime,
            s: k + 1,
            t: k - 1,
            max_iterations: 10_000,
            seed: 0,
            strategy: Strategy::Schur,
            workers: 1,
            cascade_max_stage: None,
            dump_kernels: None,
            transcript: false,
        }
    }

    pub fn k(&self) -> usize {
        3 * self.n_prime
    }

    pub fn validate(&self, instance: &CurveInstance) -> Result<(), PipelineError> {
        let k = self.k();
        if self.n_prime == 0 {
            return Err(PipelineError::BadConfig("n' must be positive".into()));
        }
        if self.s + self.t != 2 * k {
            return Err(PipelineError::BadConfig(format!(
                "s + t must be 2k = {}, got {} + {}",
                2 * k,
                self.s,
                self.t
            )));
        }
        if self.s == self.t {
            return Err(PipelineError::BadConfig("s and t must differ".into()));
        }
        if self.s == 0 || self.t == 0 {
            return Err(PipelineError::BadConfig(
                "both point sides must be non-empty".into(),
            ));
        }
        if instance.order <= 4 * k as u64 {
            return Err(PipelineError::BadConfig(format!(
                "group order {} is too small for 2k = {} distinct multipliers",
                instance.order,
                2 * k
            )));
        }
        Ok(())
    }
}

/// Default curve degree for a group order: `max(2, ceil(log2(p)))`.
pub fn default_n_prime(order: u64) -> usize {
    let bits = 64 - (order - 1).leading_zeros() as usize;
    bits.max(2)
}

/// Ordered exponent triples `(u, v, w)` with `u + v + w = n'`, graded-lex
/// with `x > y > z`. The row layout of `M` follows this order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialBasis {
    n_prime: usize,
    exps: Vec<(u32, u32, u32)>,
}

impl MonomialBasis {
    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(u32, u32, u32)] {
        &self.exps
    }

    #[cfg(test)]
    pub(crate) fn with_order(n_prime: usize, exps: Vec<(u32, u32, u32)>) -> Self {
        MonomialBasis { n_prime, exps }
    }
}

/// All `(n'+1)(n'+2)/2` degree-`n'` monomial exponents in graded-lex order.
pub fn monomial_basis(n_prime: usize) -> MonomialBasis {
    assert!(n_prime >= 1, "curve degree must be positive");
    let n = n_prime as u32;
    let mut exps = Vec::with_capacity((n_prime + 1) * (n_prime + 2) / 2);
    for u in (0..=n).rev() {
        for v in (0..=n - u).rev() {
            exps.push((u, v, n - u - v));
        }
    }
    MonomialBasis { n_prime, exps }
}

/// Evaluate every basis monomial at an affine point `(x0 : y0 : 1)`.
pub fn build_row(pt: &Point, field: FieldSpec, basis: &MonomialBasis) -> Vec<FieldElement> {
    let (x, y) = pt
        .affine()
        .expect("matrix rows come from finite points only");
    let n = basis.n_prime;
    let mut xp = Vec::with_capacity(n + 1);
    let mut yp = Vec::with_capacity(n + 1);
    xp.push(field.one());
    yp.push(field.one());
    for i in 1..=n {
        xp.push(xp[i - 1] * x);
        yp.push(yp[i - 1] * y);
    }
    // z = 1, so z^w contributes nothing
    basis
        .exps
        .iter()
        .map(|&(u, v, _)| xp[u as usize] * yp[v as usize])
        .collect()
}

/// Basis of the right kernel of `M`, one coefficient vector per row. Each
/// row, read against the monomial basis, is a degree-`n'` projective plane
/// curve passing through every point `M` was built from: `M * coeffs = 0`.
pub fn right_kernel_curves(m: &MatrixFq) -> MatrixFq {
    m.transpose().left_kernel()
}

/// Two distinct points collided, which would put a duplicate row in `M`.
/// The caller resamples the round with fresh multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCollision;

impl fmt::Display for PointCollision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "two matrix points coincide")
    }
}

/// Build the `2k x (n'+1)(n'+2)/2` matrix: rows `0..s` evaluate the
/// monomials at `n_i P`, rows `s..2k` at `-n_j Q`, in multiplier order.
pub fn build_m(
    instance: &CurveInstance,
    multipliers: &[u64],
    s: usize,
    basis: &MonomialBasis,
) -> Result<MatrixFq, PointCollision> {
    let field = instance.curve.field();
    let neg_q = instance.curve.neg(&instance.q);
    let mut points = Vec::with_capacity(multipliers.len());
    let mut seen = HashSet::with_capacity(multipliers.len());
    for (i, &n) in multipliers.iter().enumerate() {
        let base = if i < s { &instance.p } else { &neg_q };
        let pt = instance
            .curve
            .scalar_mul(base, n)
            .expect("instance points are valid");
        let key = pt.affine().map(|(x, y)| (x.value(), y.value()));
        if pt.is_infinity() || !seen.insert(key) {
            return Err(PointCollision);
        }
        points.push(pt);
    }
    let rows: Vec<Vec<FieldElement>> = points
        .iter()
        .map(|pt| build_row(pt, field, basis))
        .collect();
    Ok(MatrixFq::from_rows(field, rows).expect("rows share the field"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoverError {
    /// The certificate selected no Q-side points; it encodes a relation
    /// among multiples of P only and carries no logarithm information.
    EmptyQSide,
    /// The Q-side multipliers sum to zero mod p, so the relation cannot be
    /// solved for m.
    ZeroQSideSum,
    /// The candidate m failed the `mP = Q` check: the certificate was
    /// spurious for this instance.
    VerificationFailed,
}

impl fmt::Display for RecoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecoverError::EmptyQSide => "certificate selects only P-side points",
            RecoverError::ZeroQSideSum => "Q-side multipliers sum to zero",
            RecoverError::VerificationFailed => "candidate m fails mP = Q",
        };
        f.write_str(s)
    }
}

/// Recover the logarithm from the points a certificate selects.
///
/// The selected points sum to the identity, so
/// `(sum of P-side multipliers) P = (sum of Q-side multipliers) Q`, giving
/// `m = sum_P * sum_Q^{-1} mod p`. The result is returned only after the
/// explicit `mP = Q` verification succeeds.
pub fn recover_m(
    selected_points: &[usize],
    multipliers: &[u64],
    s: usize,
    instance: &CurveInstance,
) -> Result<u64, RecoverError> {
    let p = instance.order;
    let mut sum_p = 0u64;
    let mut sum_q = 0u64;
    let mut q_side = false;
    for &pos in selected_points {
        let n = multipliers[pos] % p;
        if pos < s {
            sum_p = ((sum_p as u128 + n as u128) % p as u128) as u64;
        } else {
            q_side = true;
            sum_q = ((sum_q as u128 + n as u128) % p as u128) as u64;
        }
    }
    if !q_side {
        return Err(RecoverError::EmptyQSide);
    }
    if sum_q == 0 {
        return Err(RecoverError::ZeroQSideSum);
    }
    // arithmetic mod the (prime) group order
    let order_field = FieldSpec::prime(p).expect("instance order is prime");
    let m = (order_field.from_int(sum_p) * order_field.from_int(sum_q).inv().expect("non-zero"))
        .value();
    if m == 0 {
        return Err(RecoverError::VerificationFailed);
    }
    let check = instance
        .curve
        .scalar_mul(&instance.p, m)
        .expect("P is valid");
    if check != instance.q {
        return Err(RecoverError::VerificationFailed);
    }
    Ok(m)
}

/// What one round produced.
#[derive(Clone, Debug)]
pub enum RoundOutcome {
    Solved {
        m: u64,
        certificate: ZeroVectorCertificate,
        multipliers: Vec<u64>,
    },
    NoHit,
    /// A certificate was found but could not be converted into a verified
    /// logarithm; the reason is kept for the transcript.
    Rejected {
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub struct RoundReport {
    pub round: u64,
    pub outcome: RoundOutcome,
    /// Multiplier redraws inside this round (point collisions plus
    /// non-generic kernel dimensions).
    pub resamples: u64,
}

impl RoundReport {
    /// One JSON object per round; hand-rolled, keys in fixed order.
    pub fn transcript_line(&self) -> String {
        match &self.outcome {
            RoundOutcome::Solved { m, .. } => format!(
                "{{\"round\":{},\"resamples\":{},\"outcome\":\"solved\",\"m\":{}}}",
                self.round, self.resamples, m
            ),
            RoundOutcome::NoHit => format!(
                "{{\"round\":{},\"resamples\":{},\"outcome\":\"nohit\"}}",
                self.round, self.resamples
            ),
            RoundOutcome::Rejected { reason } => format!(
                "{{\"round\":{},\"resamples\":{},\"outcome\":\"rejected\",\"reason\":\"{}\"}}",
                self.round, self.resamples, reason
            ),
        }
    }
}

const MAX_ROUND_RESAMPLES: u64 = 256;

/// Draw multipliers until a round with all points distinct and a generic
/// (dimension `k`) kernel comes up. Returns the raw kernel, the multipliers
/// and the redraw count.
fn draw_round_kernel(
    instance: &CurveInstance,
    config: &LasVegasConfig,
    basis: &MonomialBasis,
    rng: &mut ChaCha12Rng,
) -> Result<(MatrixFq, Vec<u64>, u64), u64> {
    let k = config.k();
    let p = instance.order;
    let mut resamples = 0u64;
    loop {
        if resamples >= MAX_ROUND_RESAMPLES {
            return Err(resamples);
        }
        // 2k distinct multipliers in [1, p)
        let mut seen = HashSet::with_capacity(2 * k);
        let mut multipliers = Vec::with_capacity(2 * k);
        while multipliers.len() < 2 * k {
            let n = rng.gen_range(1..p);
            if seen.insert(n) {
                multipliers.push(n);
            }
        }
        let m = match build_m(instance, &multipliers, config.s, basis) {
            Ok(m) => m,
            Err(PointCollision) => {
                resamples += 1;
                continue;
            }
        };
        let kernel = m.left_kernel();
        if kernel.rows() != k {
            // non-generic round; counted and redrawn
            resamples += 1;
            continue;
        }
        return Ok((kernel, multipliers, resamples));
    }
}

/// The normalized non-identity block `A` of one round, for analysis probes.
/// `None` when the round early-solves before an `A` exists.
pub fn sample_round_a(
    instance: &CurveInstance,
    config: &LasVegasConfig,
    round: u64,
) -> Option<MatrixFq> {
    let basis = monomial_basis(config.n_prime);
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    rng.set_stream(round);
    let (kernel_raw, _, _) = draw_round_kernel(instance, config, &basis, &mut rng).ok()?;
    match normalize_kernel(&kernel_raw, config.k()).expect("kernel has full rank here") {
        NormalizeOutcome::View(kv) => Some(kv.a()),
        NormalizeOutcome::EarlySolve(_) => None,
    }
}

/// Run one full round: draw multipliers, build `M`, take the left kernel,
/// normalize, search with the configured strategy, and try to recover `m`.
///
/// The round's randomness comes exclusively from stream `round` of the
/// seeded generator, so the report is a pure function of
/// `(instance, config, round)`.
pub fn iterate_once(
    instance: &CurveInstance,
    config: &LasVegasConfig,
    basis: &MonomialBasis,
    round: u64,
    stop: Option<&Arc<AtomicBool>>,
) -> RoundReport {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    rng.set_stream(round);
    let k = config.k();

    let (kernel_raw, multipliers, resamples) =
        match draw_round_kernel(instance, config, basis, &mut rng) {
            Ok(drawn) => drawn,
            Err(resamples) => {
                return RoundReport {
                    round,
                    outcome: RoundOutcome::Rejected {
                        reason: "resample budget exhausted".into(),
                    },
                    resamples,
                }
            }
        };

    if let Some(dir) = &config.dump_kernels {
        let path = dir.join(format!("kernel_{round:06}.txt"));
        // dump failures must not kill the attack; they only lose debug data
        let _ = std::fs::write(path, kernel_raw.dump());
    }

    let scan = ScanOptions {
        workers: 1,
        stop: stop.cloned(),
    };
    let kv = match normalize_kernel(&kernel_raw, k).expect("kernel has full rank here") {
        NormalizeOutcome::EarlySolve(v) => {
            // The right block was singular: v already has >= k zeros.
            let zero_positions: Vec<usize> = (0..2 * k).filter(|&i| v[i].is_zero()).collect();
            if zero_positions.len() != k {
                return RoundReport {
                    round,
                    outcome: RoundOutcome::Rejected {
                        reason: format!(
                            "early-solve vector has {} zeros, lemma requires exactly {k}",
                            zero_positions.len()
                        ),
                    },
                    resamples,
                };
            }
            let selected_points: Vec<usize> = (0..2 * k).filter(|&i| !v[i].is_zero()).collect();
            let certificate = ZeroVectorCertificate {
                v,
                zero_positions,
                selected_points,
            };
            return finish_round(instance, config, round, resamples, certificate, multipliers);
        }
        NormalizeOutcome::View(kv) => kv,
    };

    let a = kv.a();
    let location = match config.strategy {
        Strategy::Entries => scan_entries(&a),
        Strategy::AllTwoMinors => {
            scan_entries(&a).or_else(|| all_two_minors(&a, &scan).map(|h| h.location()))
        }
        Strategy::Schur => scan_entries(&a).or_else(|| {
            schur_cascade(
                &a,
                &CascadeOptions {
                    scan: scan.clone(),
                    max_stage: config.cascade_max_stage,
                },
            )
        }),
    };
    let Some(location) = location else {
        return RoundReport {
            round,
            outcome: RoundOutcome::NoHit,
            resamples,
        };
    };
    let certificate = match minor_to_certificate(&kv, &location) {
        Ok(c) => c,
        Err(e) => {
            return RoundReport {
                round,
                outcome: RoundOutcome::Rejected {
                    reason: e.to_string(),
                },
                resamples,
            }
        }
    };
    finish_round(instance, config, round, resamples, certificate, multipliers)
}

fn finish_round(
    instance: &CurveInstance,
    config: &LasVegasConfig,
    round: u64,
    resamples: u64,
    certificate: ZeroVectorCertificate,
    multipliers: Vec<u64>,
) -> RoundReport {
    match recover_m(
        &certificate.selected_points,
        &multipliers,
        config.s,
        instance,
    ) {
        Ok(m) => RoundReport {
            round,
            outcome: RoundOutcome::Solved {
                m,
                certificate,
                multipliers,
            },
            resamples,
        },
        Err(e) => RoundReport {
            round,
            outcome: RoundOutcome::Rejected {
                reason: e.to_string(),
            },
            resamples,
        },
    }
}

/// A verified logarithm plus the evidence that produced it.
#[derive(Clone, Debug)]
pub struct Solution {
    pub m: u64,
    /// 0-based index of the winning round.
    pub round: u64,
    /// Rounds consumed up to and including the winning one.
    pub iterations: u64,
    pub certificate: ZeroVectorCertificate,
    pub multipliers: Vec<u64>,
    pub strategy: Strategy,
    pub seed: u64,
}

impl Solution {
    pub fn summary_line(&self) -> String {
        format!(
            "m={} iterations={} strategy={} seed={}",
            self.m, self.iterations, self.strategy, self.seed
        )
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(Solution),
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub rounds_run: u64,
    pub total_resamples: u64,
    /// Rejected certificates observed along the way, by reason.
    pub rejected_rounds: u64,
    /// JSON lines, one per round in round order; empty unless requested.
    pub transcript: Vec<String>,
}

/// Loop [`iterate_once`] up to `max_iterations` rounds, possibly on several
/// workers. Workers claim round indices from a shared counter and stop as
/// soon as any of them commits a verified solution; among concurrently
/// committed solutions the earliest round wins.
pub fn solve(
    instance: &CurveInstance,
    config: &LasVegasConfig,
) -> Result<SolveReport, PipelineError> {
    config.validate(instance)?;
    let basis = monomial_basis(config.n_prime);
    if let Some(dir) = &config.dump_kernels {
        std::fs::create_dir_all(dir).map_err(|e| PipelineError::Io(e.to_string()))?;
    }

    let make_solution = |report: &RoundReport| -> Option<Solution> {
        match &report.outcome {
            RoundOutcome::Solved {
                m,
                certificate,
                multipliers,
            } => Some(Solution {
                m: *m,
                round: report.round,
                iterations: report.round + 1,
                certificate: certificate.clone(),
                multipliers: multipliers.clone(),
                strategy: config.strategy,
                seed: config.seed,
            }),
            _ => None,
        }
    };

    if config.workers <= 1 {
        let mut transcript = Vec::new();
        let mut total_resamples = 0;
        let mut rejected = 0;
        for round in 0..config.max_iterations {
            let report = iterate_once(instance, config, &basis, round, None);
            total_resamples += report.resamples;
            if matches!(report.outcome, RoundOutcome::Rejected { .. }) {
                rejected += 1;
            }
            if config.transcript {
                transcript.push(report.transcript_line());
            }
            if let Some(solution) = make_solution(&report) {
                return Ok(SolveReport {
                    outcome: SolveOutcome::Solved(solution),
                    rounds_run: round + 1,
                    total_resamples,
                    rejected_rounds: rejected,
                    transcript,
                });
            }
        }
        return Ok(SolveReport {
            outcome: SolveOutcome::Exhausted,
            rounds_run: config.max_iterations,
            total_resamples,
            rejected_rounds: rejected,
            transcript,
        });
    }

    let next_round = AtomicU64::new(0);
    let stop = Arc::new(AtomicBool::new(false));
    let best: Mutex<Option<Solution>> = Mutex::new(None);
    let total_resamples = AtomicU64::new(0);
    let rejected = AtomicU64::new(0);
    let rounds_run = AtomicU64::new(0);
    let transcript: Mutex<Vec<(u64, String)>> = Mutex::new(Vec::new());

    std::thread::scope(|scope| {
        for _ in 0..config.workers {
            scope.spawn(|| loop {
                if stop.load(Ordering::Relaxed) {
                    return;
                }
                let round = next_round.fetch_add(1, Ordering::Relaxed);
                if round >= config.max_iterations {
                    return;
                }
                let report = iterate_once(instance, config, &basis, round, Some(&stop));
                rounds_run.fetch_add(1, Ordering::Relaxed);
                total_resamples.fetch_add(report.resamples, Ordering::Relaxed);
                if matches!(report.outcome, RoundOutcome::Rejected { .. }) {
                    rejected.fetch_add(1, Ordering::Relaxed);
                }
                if config.transcript {
                    transcript
                        .lock()
                        .unwrap()
                        .push((round, report.transcript_line()));
                }
                if let Some(solution) = make_solution(&report) {
                    let mut slot = best.lock().unwrap();
                    if slot.as_ref().is_none_or(|s| solution.round < s.round) {
                        *slot = Some(solution);
                    }
                    stop.store(true, Ordering::Relaxed);
                }
            });
        }
    });

    let mut lines = transcript.into_inner().unwrap();
    lines.sort_by_key(|(round, _)| *round);
    let outcome = match best.into_inner().unwrap() {
        Some(s) => SolveOutcome::Solved(s),
        None => SolveOutcome::Exhausted,
    };
    Ok(SolveReport {
        outcome,
        rounds_run: rounds_run.load(Ordering::Relaxed),
        total_resamples: total_resamples.load(Ordering::Relaxed),
        rejected_rounds: rejected.load(Ordering::Relaxed),
        transcript: lines.into_iter().map(|(_, l)| l).collect(),
    })
}
