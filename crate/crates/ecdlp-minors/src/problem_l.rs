//! Deciding Problem L: find a zero minor of the kernel's non-identity block
//! `A` and convert it into a row-span vector with exactly `k` zeros (and
//! back).
//!
//! Three engines are provided, all emitting certified locations only:
//!
//! * [`scan_entries`] — zero entries, i.e. 1x1 minors;
//! * [`all_two_minors`] — every 2x2 minor, detected by the ratio-collision
//!   trick one row pair at a time;
//! * [`schur_cascade`] — 2-minor scans on successive Schur complements, with
//!   hits lifted back to minors of the original matrix, plus pivot failures
//!   which certify a singular leading block outright.
//!
//! Every location leaving this module is re-verified by a direct determinant
//! before it is returned; a scan can therefore be trusted blindly downstream.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};

use crate::ff::FieldElement;
use crate::matfq::{KernelView, MatrixFq, SchurState, StepOutcome};

/// Index sets naming a square submatrix of `A`. Indices are 0-based and
/// sorted; engines only emit locations whose minor is exactly zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinorLocation {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl MinorLocation {
    pub fn new(mut alpha: Vec<usize>, mut beta: Vec<usize>) -> Self {
        alpha.sort_unstable();
        beta.sort_unstable();
        assert_eq!(
            alpha.len(),
            beta.len(),
            "minor index sets must match in size"
        );
        MinorLocation { alpha, beta }
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }
}

impl fmt::Display for MinorLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{:?}|{:?}]", self.alpha, self.beta)
    }
}

/// A vector in the row span of the normalized kernel `[A | I]` with exactly
/// `k` zero components, together with the `k` point indices its non-zero
/// components select.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroVectorCertificate {
    /// Length `2k`.
    pub v: Vec<FieldElement>,
    /// Sorted, size exactly `k`.
    pub zero_positions: Vec<usize>,
    /// Sorted, size exactly `k`: positions (= rows of `M`) with a non-zero
    /// coefficient.
    pub selected_points: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProblemLError {
    /// The vanishing combination did not produce exactly `k` zeros at the
    /// predicted positions. On pipeline-generated kernels this cannot happen;
    /// it signals an internal bug or a hand-built degenerate input.
    LemmaViolation {
        expected_zeros: usize,
        got: usize,
    },
    /// `certificate_to_minor` got a vector outside the kernel row span.
    NotInRowSpan,
    /// The named submatrix is not singular.
    MinorNotZero(MinorLocation),
    OddK(u64),
    Shape(String),
}

impl fmt::Display for ProblemLError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemLError::LemmaViolation {
                expected_zeros,
                got,
            } => write!(
                f,
                "combination produced {got} zeros where exactly {expected_zeros} were required"
            ),
            ProblemLError::NotInRowSpan => write!(f, "vector is not in the kernel row span"),
            ProblemLError::MinorNotZero(loc) => write!(f, "minor {loc} is non-zero"),
            ProblemLError::OddK(k) => {
                write!(f, "work ratio closed form needs even k, got {k}")
            }
            ProblemLError::Shape(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for ProblemLError {}

/// First zero entry of `A` in row-major order, as a 1x1 minor location.
pub fn scan_entries(a: &MatrixFq) -> Option<MinorLocation> {
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if a.at(r, c).is_zero() {
                return Some(MinorLocation::new(vec![r], vec![c]));
            }
        }
    }
    None
}

/// How a column of a row pair behaves under the ratio test.
enum RatioClass {
    /// Both entries zero: a zero 2-minor with every other column.
    BothZero,
    /// Denominator row entry zero, numerator non-zero.
    Infinity,
    Finite(u64),
}

fn classify(
    top: FieldElement,
    bottom: FieldElement,
    bottom_inv: Option<FieldElement>,
) -> RatioClass {
    match (top.is_zero(), bottom.is_zero()) {
        (true, true) => RatioClass::BothZero,
        (false, true) => RatioClass::Infinity,
        _ => {
            let inv = bottom_inv.expect("non-zero entries carry an inverse");
            RatioClass::Finite((top * inv).value())
        }
    }
}

/// Scratch for one ratio scan; reused across pairs to avoid reallocation.
struct RatioScratch {
    seen: HashMap<u64, usize>,
    infinity_at: Option<usize>,
    zero_col_at: Option<usize>,
}

impl RatioScratch {
    fn new() -> Self {
        RatioScratch {
            seen: HashMap::new(),
            infinity_at: None,
            zero_col_at: None,
        }
    }

    fn clear(&mut self) {
        self.seen.clear();
        self.infinity_at = None;
        self.zero_col_at = None;
    }
}

/// Core of the ratio scan over one row pair. `inv_bottom[c]` must be the
/// inverse of `m[r2][c]` where that entry is non-zero.
///
/// Columns are consumed left to right; the first column `c2` that closes a
/// zero 2-minor is reported with the smallest matching `c1 < c2`. Both-zero
/// columns pair with every column, matching what an exhaustive determinant
/// scan in the same (c2, then c1) order reports.
fn scan_pair_core(
    m: &MatrixFq,
    r1: usize,
    r2: usize,
    inv_bottom: &[Option<FieldElement>],
    scratch: &mut RatioScratch,
) -> Option<(usize, usize)> {
    scratch.clear();
    for (c, &inv) in inv_bottom.iter().enumerate() {
        let class = classify(m.at(r1, c), m.at(r2, c), inv);
        // A previously seen both-zero column pairs with any current column.
        if let Some(z) = scratch.zero_col_at {
            return Some((z, c));
        }
        match class {
            RatioClass::BothZero => {
                if c > 0 {
                    // Pairs with every earlier column; the smallest is 0.
                    return Some((0, c));
                }
                scratch.zero_col_at = Some(c);
            }
            RatioClass::Infinity => match scratch.infinity_at {
                Some(prev) => return Some((prev, c)),
                None => scratch.infinity_at = Some(c),
            },
            RatioClass::Finite(key) => match scratch.seen.get(&key) {
                Some(&prev) => return Some((prev, c)),
                None => {
                    scratch.seen.insert(key, c);
                }
            },
        }
    }
    None
}

/// Zero 2-minor between rows `r1` and `r2`, located by hashing the ratios of
/// corresponding entries: two equal ratios give proportional columns, i.e. a
/// vanishing 2x2 determinant. Columns whose denominator entry is zero hash
/// to a dedicated infinity bucket; two infinities also collide.
///
/// Works over any field: the equivalence `det = 0 <=> ratio collision` does
/// not depend on the characteristic.
pub fn ratio_scan_pair(m: &MatrixFq, r1: usize, r2: usize) -> Option<(usize, usize)> {
    assert_ne!(r1, r2, "ratio scan needs two distinct rows");
    let inv_bottom: Vec<Option<FieldElement>> =
        (0..m.cols()).map(|c| m.at(r2, c).inv().ok()).collect();
    let mut scratch = RatioScratch::new();
    scan_pair_core(m, r1, r2, &inv_bottom, &mut scratch)
}

/// A zero 2-minor: rows `r1 < r2`, columns `c1 < c2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TwoMinorHit {
    pub r1: usize,
    pub r2: usize,
    pub c1: usize,
    pub c2: usize,
}

impl TwoMinorHit {
    pub fn location(&self) -> MinorLocation {
        MinorLocation::new(vec![self.r1, self.r2], vec![self.c1, self.c2])
    }
}

/// Worker configuration for the row-pair scans.
///
/// The pair space is split into contiguous ranges, one per worker; workers
/// poll the shared stop flag between pairs. With one worker the scan is a
/// plain loop and fully deterministic: the first hit in lexicographic
/// `(r1, r2)` order wins. With several workers any sound hit may be
/// returned; ties go to the earliest pair among those actually found.
#[derive(Clone, Default)]
pub struct ScanOptions {
    pub workers: usize,
    /// External early-stop signal (e.g. another round already solved).
    pub stop: Option<Arc<AtomicBool>>,
}

impl ScanOptions {
    pub fn serial() -> Self {
        ScanOptions {
            workers: 1,
            stop: None,
        }
    }

    pub fn with_workers(workers: usize) -> Self {
        ScanOptions {
            workers: workers.max(1),
            stop: None,
        }
    }

    fn stopped(&self) -> bool {
        self.stop
            .as_ref()
            .is_some_and(|s| s.load(Ordering::Relaxed))
    }
}

/// Linear index of pair `(r1, r2)`, pairs enumerated lexicographically.
#[cfg(test)]
fn pair_index(n: usize, r1: usize, r2: usize) -> usize {
    // pairs before row r1: n-1 + n-2 + ... + n-r1
    r1 * n - r1 * (r1 + 1) / 2 + (r2 - r1 - 1)
}

fn pair_from_index(n: usize, mut idx: usize) -> (usize, usize) {
    let mut r1 = 0;
    while idx >= n - r1 - 1 {
        idx -= n - r1 - 1;
        r1 += 1;
    }
    (r1, r1 + 1 + idx)
}

/// First zero 2-minor of `m` over all row pairs, ratio-scanned pair by pair.
pub fn all_two_minors(m: &MatrixFq, opts: &ScanOptions) -> Option<TwoMinorHit> {
    let n = m.rows();
    if n < 2 {
        return None;
    }
    let total_pairs = n * (n - 1) / 2;
    // Inverse tables for every row, shared by all pairs with that bottom row.
    let inv_rows: Vec<Vec<Option<FieldElement>>> = (0..n)
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).inv().ok()).collect())
        .collect();

    let workers = opts.workers.max(1).min(total_pairs.max(1));
    if workers == 1 {
        let mut scratch = RatioScratch::new();
        for r1 in 0..n {
            for (r2, inv_row) in inv_rows.iter().enumerate().skip(r1 + 1) {
                if opts.stopped() {
                    return None;
                }
                if let Some((c1, c2)) = scan_pair_core(m, r1, r2, inv_row, &mut scratch) {
                    return Some(TwoMinorHit { r1, r2, c1, c2 });
                }
            }
        }
        return None;
    }

    let found = AtomicBool::new(false);
    let best: Mutex<Option<(usize, TwoMinorHit)>> = Mutex::new(None);
    let chunk = total_pairs.div_ceil(workers);
    std::thread::scope(|scope| {
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(total_pairs);
            if lo >= hi {
                break;
            }
            let inv_rows = &inv_rows;
            let found = &found;
            let best = &best;
            scope.spawn(move || {
                let mut scratch = RatioScratch::new();
                let (mut r1, mut r2) = pair_from_index(n, lo);
                for idx in lo..hi {
                    if found.load(Ordering::Relaxed) || opts.stopped() {
                        return;
                    }
                    if let Some((c1, c2)) = scan_pair_core(m, r1, r2, &inv_rows[r2], &mut scratch) {
                        let hit = TwoMinorHit { r1, r2, c1, c2 };
                        let mut slot = best.lock().unwrap();
                        if slot.as_ref().is_none_or(|(i, _)| idx < *i) {
                            *slot = Some((idx, hit));
                        }
                        found.store(true, Ordering::Relaxed);
                        return;
                    }
                    r2 += 1;
                    if r2 == n {
                        r1 += 1;
                        r2 = r1 + 1;
                    }
                }
            });
        }
    });
    let out = best.lock().unwrap().map(|(_, hit)| hit);
    out
}

/// Cascade configuration. `max_stage = None` runs the default depth
/// `floor(k/2)`; research runs may push to `k - 2`, past which no 2x2 block
/// remains.
#[derive(Clone, Default)]
pub struct CascadeOptions {
    pub scan: ScanOptions,
    pub max_stage: Option<usize>,
}

impl CascadeOptions {
    pub fn serial() -> Self {
        CascadeOptions {
            scan: ScanOptions::serial(),
            max_stage: None,
        }
    }
}

/// Zero-minor search by Schur-complement cascade.
///
/// Stage 0 scans all 2-minors of `A` itself. Each later stage `k'` reduces
/// one more column, extracts `H'`, and scans its 2-minors; a hit at local
/// rows `I`, columns `J` lifts to
/// `alpha = sigma({0..k'} U I)`, `beta = {0..k'} U J`
/// where `sigma` maps current rows back through the recorded permutation. A
/// pivot failure at stage `k'` certifies the singular leading block of size
/// `k' + 1` and is itself a hit; the vanishing column that starves a pivot
/// normally surfaces one stage earlier as a both-zero-column 2-minor, so
/// this branch rarely fires. Every location is re-verified against the
/// original matrix by direct determinant before being returned.
pub fn schur_cascade(a: &MatrixFq, opts: &CascadeOptions) -> Option<MinorLocation> {
    let k = a.rows();
    assert_eq!(k, a.cols(), "cascade input must be square");
    if let Some(hit) = all_two_minors(a, &opts.scan) {
        return Some(certify(a, hit.location()));
    }
    let max_stage = opts.max_stage.unwrap_or(k / 2).min(k.saturating_sub(2));
    let mut state = SchurState::new(a.clone()).expect("square by construction");
    for _stage in 1..=max_stage {
        if opts.scan.stopped() {
            return None;
        }
        match state.step() {
            StepOutcome::PivotFailure => {
                let (alpha, beta) = state.singular_leading_block();
                return Some(certify(a, MinorLocation::new(alpha, beta)));
            }
            StepOutcome::Advanced => {}
        }
        let hprime = state.hprime().expect("prefix >= 1 after a step");
        if let Some(hit) = all_two_minors(&hprime, &opts.scan) {
            let kp = state.prefix();
            let current_rows: Vec<usize> = (0..kp).chain([kp + hit.r1, kp + hit.r2]).collect();
            let alpha = state.original_rows(&current_rows);
            let beta: Vec<usize> = (0..kp).chain([kp + hit.c1, kp + hit.c2]).collect();
            return Some(certify(a, MinorLocation::new(alpha, beta)));
        }
    }
    None
}

/// Re-verify an emitted location against the original matrix. A failure here
/// is an internal bug, never a data condition, so it panics.
fn certify(a: &MatrixFq, loc: MinorLocation) -> MinorLocation {
    let value = a
        .minor(&loc.alpha, &loc.beta)
        .expect("location indices are in range");
    assert!(
        value.is_zero(),
        "engine emitted a non-zero minor at {loc}: {value}"
    );
    loc
}

/// The row combination that annihilates a singular square matrix, found by
/// forward elimination on `[S | I]`: the augment of the first row whose
/// `S`-part vanishes. The zeroed row keeps coefficient 1, so the combination
/// is canonical.
fn vanishing_combination(s: &MatrixFq) -> Option<Vec<FieldElement>> {
    let n = s.rows();
    assert_eq!(n, s.cols());
    let mut rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|r| {
            let mut row = s.row(r).to_vec();
            for j in 0..n {
                row.push(if j == r {
                    s.field().one()
                } else {
                    s.field().zero()
                });
            }
            row
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(p) = (pivot_row..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv().unwrap();
        let (pivots, below) = rows.split_at_mut(pivot_row + 1);
        let pivot = &pivots[pivot_row];
        for row in below {
            if !row[col].is_zero() {
                let f = row[col] * inv;
                for (x, &p) in row.iter_mut().zip(pivot) {
                    *x = *x - f * p;
                }
            }
        }
        pivot_row += 1;
    }
    rows[pivot_row..].first().map(|row| row[n..].to_vec())
}

/// Turn a zero minor of `A` into a certificate vector.
///
/// The vanishing combination of the rows `A[alpha | beta]` is applied to the
/// full kernel rows `alpha`; by the at-least-k-zeros lemma the result has
/// exactly `k` zeros, located at `beta U {k + i : i not in alpha}`. Anything
/// else is surfaced as an error, never swallowed.
pub fn minor_to_certificate(
    kv: &KernelView,
    loc: &MinorLocation,
) -> Result<ZeroVectorCertificate, ProblemLError> {
    let k = kv.k();
    let a = kv.a();
    let value = a
        .minor(&loc.alpha, &loc.beta)
        .map_err(|e| ProblemLError::Shape(e.to_string()))?;
    if !value.is_zero() {
        return Err(ProblemLError::MinorNotZero(loc.clone()));
    }
    let sub = a
        .submatrix(&loc.alpha, &loc.beta)
        .map_err(|e| ProblemLError::Shape(e.to_string()))?;
    let comb = vanishing_combination(&sub).expect("singular submatrix has a vanishing combination");

    let field = a.field();
    let mut v = vec![field.zero(); 2 * k];
    for (pos, &row_idx) in loc.alpha.iter().enumerate() {
        let coeff = comb[pos];
        if coeff.is_zero() {
            continue;
        }
        for (j, x) in kv.row(row_idx).iter().enumerate() {
            v[j] = v[j] + coeff * *x;
        }
    }

    let zero_positions: Vec<usize> = v
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_zero())
        .map(|(i, _)| i)
        .collect();
    let mut expected: Vec<usize> = loc.beta.clone();
    expected.extend((0..k).filter(|i| !loc.alpha.contains(i)).map(|i| k + i));
    expected.sort_unstable();
    if zero_positions != expected {
        return Err(ProblemLError::LemmaViolation {
            expected_zeros: k,
            got: zero_positions.len(),
        });
    }
    let selected_points: Vec<usize> = (0..2 * k).filter(|i| !v[*i].is_zero()).collect();
    Ok(ZeroVectorCertificate {
        v,
        zero_positions,
        selected_points,
    })
}

/// The converse direction: read the expansion coefficients of `v` off the
/// identity half of `[A | I]`, take `alpha` as the rows with non-zero
/// coefficient and `beta` as the zeros of `v` inside the `A` half.
pub fn certificate_to_minor(
    kv: &KernelView,
    cert: &ZeroVectorCertificate,
) -> Result<MinorLocation, ProblemLError> {
    let k = kv.k();
    if cert.v.len() != 2 * k {
        return Err(ProblemLError::Shape(format!(
            "certificate vector has length {}, expected {}",
            cert.v.len(),
            2 * k
        )));
    }
    // Membership check: with the right half the identity, a span vector's
    // coefficients are exactly its right-half components.
    let coeffs: Vec<FieldElement> = (0..k).map(|i| cert.v[k + i]).collect();
    let recomputed = kv.matrix().vec_mul(&coeffs);
    if recomputed != cert.v {
        return Err(ProblemLError::NotInRowSpan);
    }
    let alpha: Vec<usize> = (0..k).filter(|&i| !coeffs[i].is_zero()).collect();
    let beta: Vec<usize> = (0..k).filter(|&j| cert.v[j].is_zero()).collect();
    if alpha.len() != beta.len() {
        return Err(ProblemLError::LemmaViolation {
            expected_zeros: k,
            got: cert.v.iter().filter(|e| e.is_zero()).count(),
        });
    }
    let loc = MinorLocation::new(alpha, beta);
    let value = kv
        .a()
        .minor(&loc.alpha, &loc.beta)
        .map_err(|e| ProblemLError::Shape(e.to_string()))?;
    if !value.is_zero() {
        return Err(ProblemLError::MinorNotZero(loc));
    }
    Ok(loc)
}

/// Lexicographically next combination of size `len` from `0..n`, in place.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let len = idx.len();
    let mut i = len;
    while i > 0 {
        i -= 1;
        if idx[i] < n - (len - i) {
            idx[i] += 1;
            for j in i + 1..len {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Ground-truth engine: exhaustively evaluate every minor of order up to
/// `max_order`, sizes ascending, index sets in lexicographic order. Usable
/// up to about 14x14 before combinatorics win.
pub fn brute_force_search(a: &MatrixFq, max_order: usize) -> Option<MinorLocation> {
    let max_order = max_order.min(a.rows()).min(a.cols());
    for size in 1..=max_order {
        let mut alpha: Vec<usize> = (0..size).collect();
        loop {
            let mut beta: Vec<usize> = (0..size).collect();
            loop {
                if a.minor(&alpha, &beta).expect("indices in range").is_zero() {
                    return Some(MinorLocation::new(alpha, beta));
                }
                if !next_combination(&mut beta, a.cols()) {
                    break;
                }
            }
            if !next_combination(&mut alpha, a.rows()) {
                break;
            }
        }
    }
    None
}

/// Exact rational, reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    fn reduced(num: u64, den: u64) -> Self {
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Area ratio of the cascade's 2-minor scans to the plain all-2-minors scan:
/// `(7k^2 - 9k + 2) / 24k`, the closed form of
/// `((k/2)^2 + (k/2+1)^2 + ... + (k-1)^2) / k^2` for even `k`.
pub fn work_ratio(k: u64) -> Result<Ratio, ProblemLError> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(ProblemLError::OddK(k));
    }
    Ok(Ratio::reduced(7 * k * k - 9 * k + 2, 24 * k))
}
