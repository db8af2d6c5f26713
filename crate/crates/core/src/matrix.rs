//! Dense exact linear algebra over rationals: determinants (cofactor
//! oracle, fraction-aware Gaussian elimination, fraction-free Bareiss),
//! linear solves, rank, and inverse rows.
//!
//! Pivoting is always "first nonzero in column order": with exact
//! arithmetic pivot magnitude is irrelevant and determinism is what
//! matters. Row-swap signs are tracked explicitly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

/// Hard cap for the factorial-cost Laplace expansion.
pub const LAPLACE_MAX_ROWS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Laplace expansion is limited to {max} rows, got {rows}")]
    TooLarge { rows: usize, max: usize },
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({row}, {col}) is not an integer")]
    NonIntegerEntry { row: usize, col: usize },
}

/// Dense column vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactVector {
    entries: Vec<Rational>,
}

impl ExactVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![Rational::zero(); len],
        }
    }

    /// Standard basis vector `e_k` (0-based position).
    pub fn basis(len: usize, position: usize) -> Self {
        assert!(position < len, "basis position {position} out of range {len}");
        let mut v = Self::zeros(len);
        v.entries[position] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn set(&mut self, index: usize, value: Rational) {
        self.entries[index] = value;
    }

    pub fn dot(&self, other: &ExactVector) -> Rational {
        assert_eq!(self.len(), other.len(), "dot length mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl std::ops::Index<usize> for ExactVector {
    type Output = Rational;
    fn index(&self, index: usize) -> &Rational {
        &self.entries[index]
    }
}

impl FromIterator<Rational> for ExactVector {
    fn from_iter<T: IntoIterator<Item = Rational>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "all rows must have equal length"
        );
        Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, row: usize, col: usize) -> &Rational {
        debug_assert!(row < self.rows && col < self.cols);
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> ExactVector {
        (0..self.rows).map(|r| self.at(r, col).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &ExactVector) -> ExactVector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v.iter())
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Copy with column `col` replaced by `v` (the Cramer construction).
    pub fn with_column_replaced(&self, col: usize, v: &ExactVector) -> ExactMatrix {
        assert!(col < self.cols, "column {col} out of range");
        assert_eq!(self.rows, v.len(), "replacement column length mismatch");
        let mut out = self.clone();
        for r in 0..self.rows {
            out.set(r, col, v[r].clone());
        }
        out
    }

    /// Copy with row `row` and column `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> ExactMatrix {
        assert!(row < self.rows && col < self.cols);
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            for c in 0..self.cols {
                if c == col {
                    continue;
                }
                entries.push(self.at(r, c).clone());
            }
        }
        ExactMatrix::new(self.rows - 1, self.cols - 1, entries)
    }

    /// Assemble square blocks along the diagonal; everything off the blocks
    /// is zero.
    pub fn block_diagonal(blocks: &[ExactMatrix]) -> ExactMatrix {
        assert!(blocks.iter().all(ExactMatrix::is_square), "blocks must be square");
        let size: usize = blocks.iter().map(ExactMatrix::rows).sum();
        let mut out = ExactMatrix::zeros(size, size);
        let mut offset = 0;
        for block in blocks {
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    if !block.at(r, c).is_zero() {
                        out.set(offset + r, offset + c, block.at(r, c).clone());
                    }
                }
            }
            offset += block.rows();
        }
        out
    }

    /// True when every entry has denominator 1.
    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(crate::rational::is_integer)
    }

    /// Dump format: rows separated by newlines, entries by tabs, each entry
    /// in canonical `p/q` (or `p`) form.
    pub fn dump(&self) -> String {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join("\t")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn require_square(m: &ExactMatrix) -> Result<usize, LinalgError> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Determinant by first-row cofactor expansion. Factorial cost; the
/// reference oracle for the elimination paths, capped at
/// [`LAPLACE_MAX_ROWS`].
pub fn det_laplace(m: &ExactMatrix) -> Result<Rational, LinalgError> {
    let n = require_square(m)?;
    if n > LAPLACE_MAX_ROWS {
        return Err(LinalgError::TooLarge {
            rows: n,
            max: LAPLACE_MAX_ROWS,
        });
    }
    Ok(laplace_rec(m))
}

fn laplace_rec(m: &ExactMatrix) -> Rational {
    let n = m.rows();
    match n {
        0 => return Rational::one(),
        1 => return m.at(0, 0).clone(),
        _ => {}
    }
    let mut acc = Rational::zero();
    for c in 0..n {
        let a = m.at(0, c);
        if a.is_zero() {
            continue;
        }
        let cofactor = laplace_rec(&m.minor(0, c));
        if c % 2 == 0 {
            acc += a * cofactor;
        } else {
            acc -= a * cofactor;
        }
    }
    acc
}

/// Determinant by exact Gaussian elimination over rationals, first-nonzero
/// pivoting, row-swap sign tracked explicitly.
pub fn det_gauss(m: &ExactMatrix) -> Result<Rational, LinalgError> {
    let n = require_square(m)?;
    let mut work: Vec<Vec<Rational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut negate = false;

    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !work[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot_row != col {
            work.swap(pivot_row, col);
            negate = !negate;
        }
        let pivot = work[col][col].clone();
        for r in col + 1..n {
            if work[r][col].is_zero() {
                continue;
            }
            let factor = &work[r][col] / &pivot;
            for c in col..n {
                if work[col][c].is_zero() {
                    continue;
                }
                let delta = &factor * &work[col][c];
                work[r][c] -= delta;
            }
        }
    }

    let mut det = Rational::one();
    for (i, row) in work.iter().enumerate() {
        det *= &row[i];
    }
    if negate {
        det = -det;
    }
    Ok(det)
}

/// Fraction-free Bareiss determinant for integer matrices. Intermediate
/// values stay integral; rejects matrices with non-integer entries.
pub fn det_bareiss(m: &ExactMatrix) -> Result<Rational, LinalgError> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut work: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let entry = m.at(r, c);
            if !crate::rational::is_integer(entry) {
                return Err(LinalgError::NonIntegerEntry { row: r, col: c });
            }
            row.push(entry.numer().clone());
        }
        work.push(row);
    }

    let mut negate = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if work[k][k].is_zero() {
            let Some(swap_row) = (k + 1..n).find(|&r| !work[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            work.swap(k, swap_row);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &work[i][j] * &work[k][k] - &work[i][k] * &work[k][j];
                // Exact by the Sylvester identity; stays exact under the
                // row swaps done above.
                work[i][j] = num / &prev_pivot;
            }
            work[i][k] = BigInt::zero();
        }
        prev_pivot = work[k][k].clone();
    }

    let mut det = work[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Ok(Rational::from_integer(det))
}

/// Production determinant: Bareiss when every entry is an integer, generic
/// exact elimination otherwise. The two paths agree exactly on their shared
/// domain.
pub fn det_elimination(m: &ExactMatrix) -> Result<Rational, LinalgError> {
    require_square(m)?;
    if m.is_integer() {
        det_bareiss(m)
    } else {
        det_gauss(m)
    }
}

/// Solve `A y = b` for nonsingular square `A`, exactly. Singularity is
/// reported as a distinct error.
pub fn solve(a: &ExactMatrix, b: &ExactVector) -> Result<ExactVector, LinalgError> {
    let n = require_square(a)?;
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            actual: b.len(),
        });
    }

    // Augmented forward elimination, then back substitution.
    let mut work: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();

    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !work[r][col].is_zero()) else {
            return Err(LinalgError::Singular);
        };
        work.swap(pivot_row, col);
        let pivot = work[col][col].clone();
        for r in col + 1..n {
            if work[r][col].is_zero() {
                continue;
            }
            let factor = &work[r][col] / &pivot;
            for c in col..=n {
                if work[col][c].is_zero() {
                    continue;
                }
                let delta = &factor * &work[col][c];
                work[r][c] -= delta;
            }
        }
    }

    let mut solution = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = work[row][n].clone();
        for c in row + 1..n {
            if work[row][c].is_zero() || solution[c].is_zero() {
                continue;
            }
            acc -= &work[row][c] * &solution[c];
        }
        solution[row] = acc / &work[row][row];
    }
    Ok(ExactVector::new(solution))
}

/// Exact rank via elimination over rationals; works for rectangular input.
pub fn rank(m: &ExactMatrix) -> usize {
    let mut work: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut pivots = 0;
    for col in 0..ncols {
        if pivots == nrows {
            break;
        }
        let Some(pivot_row) = (pivots..nrows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(pivot_row, pivots);
        let pivot = work[pivots][col].clone();
        for r in pivots + 1..nrows {
            if work[r][col].is_zero() {
                continue;
            }
            let factor = &work[r][col] / &pivot;
            for c in col..ncols {
                if work[pivots][c].is_zero() {
                    continue;
                }
                let delta = &factor * &work[pivots][c];
                work[r][c] -= delta;
            }
        }
        pivots += 1;
    }
    pivots
}

/// Row `t` (1-based, matching the term indexing used everywhere else) of
/// `A^{-1}`, computed by solving `A^T w = e_t`. The result satisfies
/// `w . (column k of A) = 1` when `k = t` and `0` otherwise.
pub fn inverse_row(a: &ExactMatrix, t: usize) -> Result<ExactVector, LinalgError> {
    let n = require_square(a)?;
    assert!(
        (1..=n).contains(&t),
        "index {t} out of range for {n}x{n} matrix (expected 1..={n})"
    );
    solve(&a.transpose(), &ExactVector::basis(n, t - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, is_canonical, rat};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn laplace_base_cases() {
        assert_eq!(det_laplace(&m(&[&[5]])).unwrap(), int(5));
        assert_eq!(det_laplace(&m(&[&[1, -1], &[1, 0]])).unwrap(), int(1));
        assert_eq!(det_laplace(&ExactMatrix::identity(3)).unwrap(), int(1));
    }

    #[test]
    fn laplace_rejects_bad_input() {
        assert!(matches!(
            det_laplace(&ExactMatrix::zeros(2, 3)),
            Err(LinalgError::NotSquare { .. })
        ));
        assert!(matches!(
            det_laplace(&ExactMatrix::identity(9)),
            Err(LinalgError::TooLarge { .. })
        ));
    }

    #[test]
    fn elimination_matches_laplace_small() {
        let samples = [
            m(&[&[1, 2], &[2, 4]]),
            m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]),
            m(&[&[0, 1, 2], &[3, 0, 4], &[5, 6, 0]]),
            m(&[&[1, -1, 2, 0], &[0, 0, 3, 1], &[2, 2, 0, -1], &[1, 0, 0, 4]]),
        ];
        for sample in &samples {
            assert_eq!(
                det_elimination(sample).unwrap(),
                det_laplace(sample).unwrap()
            );
        }
        assert_eq!(det_elimination(&m(&[&[1, 2], &[2, 4]])).unwrap(), int(0));
        assert_eq!(
            det_elimination(&m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])).unwrap(),
            int(30)
        );
    }

    #[test]
    fn gauss_handles_fractions() {
        let a = ExactMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(2, 7)],
        ]);
        assert_eq!(det_gauss(&a).unwrap(), det_laplace(&a).unwrap());
    }

    #[test]
    fn bareiss_agrees_with_gauss_and_rejects_fractions() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(det_bareiss(&a).unwrap(), det_gauss(&a).unwrap());
        // zero leading pivot forces a swap
        let b = m(&[&[0, 2], &[3, 4]]);
        assert_eq!(det_bareiss(&b).unwrap(), int(-6));
        let frac = ExactMatrix::from_rows(vec![vec![rat(1, 2)]]);
        assert!(matches!(
            det_bareiss(&frac),
            Err(LinalgError::NonIntegerEntry { row: 0, col: 0 })
        ));
    }

    #[test]
    fn solve_identity_and_singular() {
        let b = ExactVector::new(vec![int(4), int(5), int(6)]);
        assert_eq!(solve(&ExactMatrix::identity(3), &b).unwrap(), b);
        assert!(matches!(
            solve(&m(&[&[1, 1], &[1, 1]]), &ExactVector::zeros(2)),
            Err(LinalgError::Singular)
        ));
    }

    #[test]
    fn solve_round_trips() {
        let a = m(&[&[2, 1, 0], &[1, 3, -1], &[0, 5, 4]]);
        let b = ExactVector::new(vec![int(1), rat(1, 2), int(-3)]);
        let y = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vector(&y), b);
        assert!(y.iter().all(is_canonical));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&ExactMatrix::identity(4)), 4);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
        let wide = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&wide), rank(&wide.transpose()));
    }

    #[test]
    fn inverse_row_examples() {
        let w = inverse_row(&ExactMatrix::identity(3), 2).unwrap();
        assert_eq!(w, ExactVector::new(vec![int(0), int(1), int(0)]));

        let d = m(&[&[2, 0], &[0, 4]]);
        let w = inverse_row(&d, 2).unwrap();
        assert_eq!(w, ExactVector::new(vec![int(0), rat(1, 4)]));
    }

    #[test]
    fn inverse_row_defining_identity() {
        let a = m(&[&[2, 1, 0], &[1, 3, -1], &[0, 5, 4]]);
        for t in 1..=3 {
            let w = inverse_row(&a, t).unwrap();
            for col in 0..3 {
                let expect = if col + 1 == t { int(1) } else { int(0) };
                assert_eq!(w.dot(&a.column(col)), expect);
            }
        }
    }

    #[test]
    fn block_diagonal_assembly() {
        let blocks = [m(&[&[1, 2], &[3, 4]]), m(&[&[5]])];
        let full = ExactMatrix::block_diagonal(&blocks);
        assert_eq!(full.rows(), 3);
        assert_eq!(*full.at(2, 2), int(5));
        assert_eq!(*full.at(0, 2), int(0));
        assert_eq!(
            det_elimination(&full).unwrap(),
            det_elimination(&blocks[0]).unwrap() * det_elimination(&blocks[1]).unwrap()
        );
    }

    #[test]
    fn dump_format() {
        let a = ExactMatrix::from_rows(vec![
            vec![int(1), rat(-1, 2)],
            vec![int(0), int(3)],
        ]);
        assert_eq!(a.dump(), "1\t-1/2\n0\t3");
    }
}
