//! Dense matrices over a finite field: elimination, left kernels, exact
//! determinants and minors, and tracked Schur-complement reduction.
//!
//! Everything here is exact field arithmetic; there is no floating point and
//! no sparse representation. Matrices are immutable values once built; the
//! one mutable object is [`SchurState`], which is owned by a single cascade.

use std::fmt;

use rand::Rng;

use crate::ff::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MatError {
    /// Matrix construction from inconsistent rows or mixed fields.
    Shape(String),
    IndexOutOfRange {
        index: usize,
        bound: usize,
    },
    MinorSizeMismatch {
        alpha: usize,
        beta: usize,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// `normalize_kernel` input does not have full row rank.
    RankDeficient {
        rank: usize,
        expected: usize,
    },
    /// `extract_hprime` before any column has been reduced.
    EmptyPrefix,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::Shape(s) => write!(f, "bad matrix shape: {s}"),
            MatError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            MatError::MinorSizeMismatch { alpha, beta } => {
                write!(
                    f,
                    "minor index sets differ in size: |alpha|={alpha}, |beta|={beta}"
                )
            }
            MatError::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            MatError::RankDeficient { rank, expected } => {
                write!(f, "kernel basis has rank {rank}, expected {expected}")
            }
            MatError::EmptyPrefix => write!(f, "no columns reduced yet (k' = 0)"),
        }
    }
}

impl std::error::Error for MatError {}

/// Row-major dense matrix with entries in one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<FieldElement>,
}

impl MatrixFq {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.spec(), field, "entry ({r},{c}) built in the wrong field");
                data.push(e);
            }
        }
        MatrixFq {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self, MatError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(MatError::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for e in &row {
                if e.spec() != field {
                    return Err(MatError::Shape(format!("row {i} mixes fields")));
                }
            }
            data.extend(row);
        }
        Ok(MatrixFq {
            rows: nrows,
            cols: ncols,
            field,
            data,
        })
    }

    /// Convenience constructor from integer representatives.
    pub fn from_ints(field: FieldSpec, rows: &[&[u64]]) -> Self {
        Self::from_fn(
            field,
            rows.len(),
            rows.first().map_or(0, |r| r.len()),
            |r, c| field.from_int(rows[r][c]),
        )
    }

    pub fn random(field: FieldSpec, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> FieldElement {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: FieldElement) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        assert_eq!(e.spec(), self.field, "entry set in the wrong field");
        self.data[r * self.cols + c] = e;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatrixFq {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r))
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<MatrixFq, MatError> {
        for &r in row_idx {
            if r >= self.rows {
                return Err(MatError::IndexOutOfRange {
                    index: r,
                    bound: self.rows,
                });
            }
        }
        for &c in col_idx {
            if c >= self.cols {
                return Err(MatError::IndexOutOfRange {
                    index: c,
                    bound: self.cols,
                });
            }
        }
        Ok(Self::from_fn(
            self.field,
            row_idx.len(),
            col_idx.len(),
            |r, c| self.at(row_idx[r], col_idx[c]),
        ))
    }

    pub fn mul(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        assert_eq!(self.field, other.field, "field mismatch in matrix product");
        let mut out = Self::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(l, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows, "vector length must match row count");
        let mut out = vec![self.field.zero(); self.cols];
        for (i, &coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (acc, &x) in out.iter_mut().zip(self.row(i)) {
                *acc = *acc + coeff * x;
            }
        }
        out
    }

    /// Basis of the left kernel `{v : vM = 0}` as matrix rows. The row count
    /// is `rows(M) - rank(M)`; a trivial kernel yields a 0-row matrix.
    ///
    /// Row-reduces the augmented matrix `[M | I]`; augment parts of the rows
    /// whose `M`-part vanished form the basis.
    pub fn left_kernel(&self) -> MatrixFq {
        let n = self.rows;
        let mut work = self.clone();
        let mut aug = MatrixFq::identity(self.field, n);
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            let Some(p) = (pivot_row..n).find(|&r| !work.at(r, col).is_zero()) else {
                continue;
            };
            work.swap_rows(pivot_row, p);
            aug.swap_rows(pivot_row, p);
            let inv = work.at(pivot_row, col).inv().expect("pivot is non-zero");
            for r in pivot_row + 1..n {
                let f = work.at(r, col);
                if f.is_zero() {
                    continue;
                }
                let factor = f * inv;
                work.row_sub_scaled(r, pivot_row, factor, col);
                aug.row_sub_scaled(r, pivot_row, factor, 0);
            }
            pivot_row += 1;
            if pivot_row == n {
                break;
            }
        }
        let mut basis = Vec::with_capacity(n - pivot_row);
        for r in pivot_row..n {
            debug_assert!(work.row(r).iter().all(FieldElement::is_zero));
            basis.push(aug.row(r).to_vec());
        }
        if basis.is_empty() {
            return MatrixFq::zero(self.field, 0, n);
        }
        MatrixFq::from_rows(self.field, basis).expect("kernel rows are consistent")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let (x, y) = (self.at(a, c), self.at(b, c));
            self.set(a, c, y);
            self.set(b, c, x);
        }
    }

    /// row[dst] -= factor * row[src], starting at column `from`.
    fn row_sub_scaled(&mut self, dst: usize, src: usize, factor: FieldElement, from: usize) {
        for c in from..self.cols {
            let v = self.at(dst, c) - factor * self.at(src, c);
            self.set(dst, c, v);
        }
    }

    /// Exact determinant by Gaussian elimination with swap-sign tracking.
    pub fn det(&self) -> Result<FieldElement, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        let mut work = self.clone();
        let mut acc = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !work.at(r, col).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != col {
                work.swap_rows(col, p);
                acc = -acc;
            }
            let pivot = work.at(col, col);
            acc = acc * pivot;
            let inv = pivot.inv().expect("pivot is non-zero");
            for r in col + 1..n {
                let f = work.at(r, col);
                if !f.is_zero() {
                    work.row_sub_scaled(r, col, f * inv, col);
                }
            }
        }
        Ok(acc)
    }

    /// The minor `det(M[alpha | beta])`. Index sets are 0-based, sorted and
    /// duplicate-free by contract.
    pub fn minor(&self, alpha: &[usize], beta: &[usize]) -> Result<FieldElement, MatError> {
        if alpha.len() != beta.len() {
            return Err(MatError::MinorSizeMismatch {
                alpha: alpha.len(),
                beta: beta.len(),
            });
        }
        if alpha.is_empty() {
            return Err(MatError::MinorSizeMismatch { alpha: 0, beta: 0 });
        }
        self.submatrix(alpha, beta)?.det()
    }

    /// Debug dump: one row per line, entries space-separated in the
    /// instance-file element encoding.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.encode()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// A left-kernel basis normalized to `[A | I]`, with the bookkeeping needed
/// to map kernel columns back to the rows of the matrix it annihilates.
///
/// Column `j < k` belongs to point row `j`; the normalized row `i` carries
/// its identity 1 in column `k + i`.
#[derive(Clone, Debug)]
pub struct KernelView {
    k: usize,
    matrix: MatrixFq,
    row_origin: Option<Vec<usize>>,
}

impl KernelView {
    pub fn k(&self) -> usize {
        self.k
    }

    /// The full normalized `k x 2k` kernel.
    pub fn matrix(&self) -> &MatrixFq {
        &self.matrix
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        self.matrix.row(i)
    }

    /// The non-identity left block `A` (k x k).
    pub fn a(&self) -> MatrixFq {
        let idx: Vec<usize> = (0..self.k).collect();
        self.matrix
            .submatrix(&idx, &idx)
            .expect("left block in range")
    }

    /// When normalization was a pure row permutation (possibly scaled),
    /// `row_origin()[i]` is the raw-kernel row that became row `i`.
    pub fn row_origin(&self) -> Option<&[usize]> {
        self.row_origin.as_deref()
    }
}

/// Result of [`normalize_kernel`]: either the `[A | I]` view, or a vector
/// with at least `k` zeros found for free because the right block was
/// singular.
#[derive(Clone, Debug)]
pub enum NormalizeOutcome {
    View(KernelView),
    EarlySolve(Vec<FieldElement>),
}

/// Row-reduce a `k x 2k` kernel basis so that the right `k` columns form the
/// identity.
///
/// If the right block is singular some combination of basis rows vanishes on
/// the whole right half — a vector with at least `k` zeros, returned as
/// [`NormalizeOutcome::EarlySolve`]. A basis that is not full rank is an
/// error; the caller resamples its round.
pub fn normalize_kernel(k_raw: &MatrixFq, k: usize) -> Result<NormalizeOutcome, MatError> {
    if k_raw.rows() != k || k_raw.cols() != 2 * k {
        return Err(MatError::Shape(format!(
            "expected {k}x{}, got {}x{}",
            2 * k,
            k_raw.rows(),
            k_raw.cols()
        )));
    }
    let right_idx: Vec<usize> = (k..2 * k).collect();
    let all_rows: Vec<usize> = (0..k).collect();
    let right = k_raw.submatrix(&all_rows, &right_idx)?;

    let kernel_of_right = right.left_kernel();
    if kernel_of_right.rows() > 0 {
        // Right block singular: c * right = 0 for some c != 0.
        let c = kernel_of_right.row(0).to_vec();
        let v = k_raw.vec_mul(&c);
        if v.iter().all(FieldElement::is_zero) {
            // The same combination kills the whole basis: rank < k.
            let rank = k - k_raw.left_kernel().rows();
            return Err(MatError::RankDeficient { rank, expected: k });
        }
        return Ok(NormalizeOutcome::EarlySolve(v));
    }

    // Detect a (scaled) permutation right block before doing a general
    // Gauss-Jordan: in that case normalization keeps rows intact up to
    // scaling and the origin map is meaningful.
    let origin: Option<Vec<usize>> = 'detect: {
        let mut seen_col = vec![false; k];
        let mut map = vec![0usize; k];
        for r in 0..k {
            let nz: Vec<usize> = (0..k).filter(|&c| !right.at(r, c).is_zero()).collect();
            if nz.len() != 1 || seen_col[nz[0]] {
                break 'detect None;
            }
            seen_col[nz[0]] = true;
            // raw row r has its single non-zero in right column nz[0], so it
            // becomes normalized row nz[0].
            map[nz[0]] = r;
        }
        Some(map)
    };

    // Gauss-Jordan driving the right block to the identity.
    let mut work = k_raw.clone();
    for col in 0..k {
        let abs_col = k + col;
        let p = (col..k)
            .find(|&r| !work.at(r, abs_col).is_zero())
            .expect("right block is invertible here");
        work.swap_rows(col, p);
        let inv = work.at(col, abs_col).inv().expect("pivot non-zero");
        if !inv.is_one() {
            for c in 0..2 * k {
                let v = work.at(col, c) * inv;
                work.set(col, c, v);
            }
        }
        for r in 0..k {
            if r == col {
                continue;
            }
            let f = work.at(r, abs_col);
            if !f.is_zero() {
                work.row_sub_scaled(r, col, f, 0);
            }
        }
    }
    Ok(NormalizeOutcome::View(KernelView {
        k,
        matrix: work,
        row_origin: origin,
    }))
}

/// One elementary row operation, replayable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    /// row[dst] += factor * row[src]
    AddMul {
        src: usize,
        dst: usize,
        factor: FieldElement,
    },
}

/// Outcome of one [`SchurState::step`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Advanced,
    /// The whole column below the reduced prefix is zero: the leading
    /// principal block of size `prefix + 1` is singular. For the zero-minor
    /// search this is a hit, not a failure.
    PivotFailure,
}

/// Column-by-column triangularization of a square matrix with full tracking:
/// the permutation of original rows, the swap parity, and a replayable
/// history of elementary operations.
///
/// After `k'` successful steps, columns `0..k'` of the working matrix are
/// upper-triangular with non-zero diagonal and zeros below; the lower-right
/// block is the Schur complement.
#[derive(Clone, Debug)]
pub struct SchurState {
    a: MatrixFq,
    prefix: usize,
    row_map: Vec<usize>,
    swap_count: usize,
    history: Vec<RowOp>,
}

impl SchurState {
    pub fn new(a: MatrixFq) -> Result<Self, MatError> {
        if a.rows() != a.cols() {
            return Err(MatError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        Ok(SchurState {
            a,
            prefix: 0,
            row_map: (0..n).collect(),
            swap_count: 0,
            history: Vec::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.a.rows()
    }

    /// The reduced-prefix size `k'`.
    pub fn prefix(&self) -> usize {
        self.prefix
    }

    /// The working matrix `A'`.
    pub fn a(&self) -> &MatrixFq {
        &self.a
    }

    /// `row_map()[r]` is the original index of current row `r`.
    pub fn row_map(&self) -> &[usize] {
        &self.row_map
    }

    pub fn history(&self) -> &[RowOp] {
        &self.history
    }

    /// +1 or -1 depending on the parity of recorded swaps, as a field element.
    pub fn swap_sign(&self) -> FieldElement {
        let one = self.a.field().one();
        if self.swap_count.is_multiple_of(2) {
            one
        } else {
            -one
        }
    }

    /// Product of the pivot diagonal of the triangularized prefix.
    pub fn pivot_product(&self) -> FieldElement {
        let mut acc = self.a.field().one();
        for i in 0..self.prefix {
            acc = acc * self.a.at(i, i);
        }
        acc
    }

    /// Reduce column `k'`: pick the first non-zero pivot scanning downward
    /// among rows `k'..k`, swap it up, and zero everything below it.
    pub fn step(&mut self) -> StepOutcome {
        let k = self.k();
        let col = self.prefix;
        assert!(col < k, "cascade already fully reduced");
        let Some(p) = (col..k).find(|&r| !self.a.at(r, col).is_zero()) else {
            return StepOutcome::PivotFailure;
        };
        if p != col {
            self.a.swap_rows(col, p);
            self.row_map.swap(col, p);
            self.swap_count += 1;
            self.history.push(RowOp::Swap(col, p));
        }
        let inv = self.a.at(col, col).inv().expect("pivot non-zero");
        for r in col + 1..k {
            let f = self.a.at(r, col);
            if f.is_zero() {
                continue;
            }
            let factor = -(f * inv);
            // dst += factor * src zeroes the column entry exactly.
            self.a.row_sub_scaled(r, col, f * inv, col);
            self.history.push(RowOp::AddMul {
                src: col,
                dst: r,
                factor,
            });
        }
        self.prefix += 1;
        StepOutcome::Advanced
    }

    /// The `(k - k') x (k - k')` lower-right block `H'`.
    pub fn hprime(&self) -> Result<MatrixFq, MatError> {
        if self.prefix == 0 {
            return Err(MatError::EmptyPrefix);
        }
        let idx: Vec<usize> = (self.prefix..self.k()).collect();
        self.a.submatrix(&idx, &idx)
    }

    /// The index sets naming the singular leading block after a
    /// [`StepOutcome::PivotFailure`]: original rows of the current prefix
    /// plus the failed row set, against columns `0..=k'`.
    pub fn singular_leading_block(&self) -> (Vec<usize>, Vec<usize>) {
        let size = self.prefix + 1;
        let mut alpha: Vec<usize> = self.row_map[..size].to_vec();
        alpha.sort_unstable();
        let beta: Vec<usize> = (0..size).collect();
        (alpha, beta)
    }

    /// Map current-row indices back to original-row indices, sorted.
    pub fn original_rows(&self, current: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = current.iter().map(|&r| self.row_map[r]).collect();
        out.sort_unstable();
        out
    }

    /// Apply the recorded history to a fresh copy of `original`; the result
    /// must reproduce the working matrix exactly.
    pub fn replay(&self, original: &MatrixFq) -> MatrixFq {
        let mut m = original.clone();
        for op in &self.history {
            match *op {
                RowOp::Swap(a, b) => m.swap_rows(a, b),
                RowOp::AddMul { src, dst, factor } => {
                    m.row_sub_scaled(dst, src, -factor, 0);
                }
            }
        }
        m
    }
}
