//! Dense exact integer matrices.
//!
//! Entries are `i64` and every arithmetic step is overflow-checked; the
//! characteristic polynomial is returned with arbitrary-precision
//! coefficients (see [`crate::charpoly`]).

use std::fmt;
use std::io::{self, BufRead, Write};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("entry ({row},{col}) = {value} is odd, cannot halve")]
    OddEntry { row: usize, col: usize, value: i64 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<io::Error> for MatrixError {
    fn from(e: io::Error) -> Self {
        MatrixError::Io(e.to_string())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| (i == j) as i64)
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![1; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Panics if the rows are ragged; intended for literals.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix literal");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(rows, cols, data.len(), 1));
        }
        Ok(IntMatrix { rows, cols, data })
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

    pub fn order(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First `(i, j)` with `i < j` and `m[i,j] != m[j,i]`.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != self[(j, i)])
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Entrywise absolute value `|M|`.
    pub fn abs(&self) -> Self {
        self.map(i64::abs)
    }

    pub fn scale(&self, s: i64) -> Self {
        self.map(|x| x * s)
    }

    /// Exact division of every entry by two.
    pub fn halve(&self) -> Result<Self, MatrixError> {
        if let Some(pos) = self.data.iter().position(|x| x % 2 != 0) {
            return Err(MatrixError::OddEntry {
                row: pos / self.cols,
                col: pos % self.cols,
                value: self.data[pos],
            });
        }
        Ok(self.map(|x| x / 2))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b).ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, i64::checked_sub)
    }

    /// Matrix product; rows are computed in parallel, each in a fixed order.
    pub fn try_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let (n, inner, m) = (self.rows, self.cols, other.cols);
        let rows: Vec<Vec<i64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0i128; m];
                for t in 0..inner {
                    let a = self.data[i * inner + t] as i128;
                    if a == 0 {
                        continue;
                    }
                    for (slot, &b) in acc.iter_mut().zip(other.row(t)) {
                        *slot += a * b as i128;
                    }
                }
                acc.into_iter()
                    .map(|x| i64::try_from(x).map_err(|_| MatrixError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix {
            rows: n,
            cols: m,
            data: rows.concat(),
        })
    }

    /// `self · selfᵀ`.
    pub fn gram(&self) -> Result<Self, MatrixError> {
        self.try_mul(&self.transpose())
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i,j] · other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    /// Assembles a block matrix; every block row must agree in height and every
    /// block column in width.
    pub fn from_blocks(blocks: &[Vec<&IntMatrix>]) -> Result<Self, MatrixError> {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(MatrixError::DimensionMismatch(bi, row.len(), bi, widths.len()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(MatrixError::DimensionMismatch(
                        b.rows, b.cols, heights[bi], widths[bj],
                    ));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)];
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(blocks: &[&IntMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let c0 = cols.start;
        let r0 = rows.start;
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)])
    }

    /// `P M Pᵀ` where new index `a` takes old index `order[a]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self::from_fn(order.len(), order.len(), |i, j| self[(order[i], order[j])])
    }

    /// Returns `(α, β)` with `self = αI + βJ`, if such integers exist.
    pub fn detect_alpha_beta(&self) -> Result<Option<(i64, i64)>, MatrixError> {
        let n = self.order()?;
        if n == 0 {
            return Ok(Some((0, 0)));
        }
        let beta = if n > 1 { self[(0, 1)] } else { 0 };
        let alpha = self[(0, 0)] - beta;
        let ok = (0..n).all(|i| {
            (0..n).all(|j| self[(i, j)] == if i == j { alpha + beta } else { beta })
        });
        Ok(ok.then_some((alpha, beta)))
    }

    /// True iff every entry pair differs by an even integer.
    pub fn mod2_congruent(&self, other: &Self) -> Result<bool, MatrixError> {
        Ok(self.first_mod2_difference(other)?.is_none())
    }

    pub fn first_mod2_difference(&self, other: &Self) -> Result<Option<(usize, usize)>, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| (a - b).rem_euclid(2) != 0)
            .map(|p| (p / self.cols, p % self.cols)))
    }

    /// Writes the text format: `rows cols` header, one line per row.
    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Reads the text format. `#` lines before the header are skipped and
    /// runs of spaces are accepted.
    pub fn read_text<R: BufRead>(r: R) -> Result<Self, MatrixError> {
        let mut lines = r.lines().enumerate();
        let (rows, cols) = loop {
            let Some((no, line)) = lines.next() else {
                return Err(MatrixError::Parse {
                    line: 0,
                    msg: "missing header".into(),
                });
            };
            let line = line?;
            if line.starts_with('#') {
                continue;
            }
            let dims = parse_ints(&line, no + 1)?;
            if dims.len() != 2 || dims.iter().any(|&d| d < 0) {
                return Err(MatrixError::Parse {
                    line: no + 1,
                    msg: "header must be `<rows> <cols>`".into(),
                });
            }
            break (dims[0] as usize, dims[1] as usize);
        };
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let Some((no, line)) = lines.next() else {
                return Err(MatrixError::Parse {
                    line: 0,
                    msg: format!("expected {rows} rows"),
                });
            };
            let vals = parse_ints(&line?, no + 1)?;
            if vals.len() != cols {
                return Err(MatrixError::Parse {
                    line: no + 1,
                    msg: format!("expected {cols} entries, found {}", vals.len()),
                });
            }
            data.extend(vals);
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_text(s: &str) -> Result<Self, MatrixError> {
        Self::read_text(s.as_bytes())
    }
}

fn parse_ints(line: &str, no: usize) -> Result<Vec<i64>, MatrixError> {
    line.split(' ')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>().map_err(|e| MatrixError::Parse {
                line: no,
                msg: format!("{t:?}: {e}"),
            })
        })
        .collect()
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator impls panic on shape mismatch or overflow; use the `try_*` methods
// where inputs are untrusted.
impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_add(rhs).expect("matrix addition")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.map(|x| -x)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2() -> IntMatrix {
        IntMatrix::from_rows(&[[0, 1], [1, 0]])
    }

    #[test]
    fn kronecker_with_identity() {
        let k = swap2().kronecker(&IntMatrix::identity(2));
        let expected = IntMatrix::from_rows(&[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(k, expected);
        let m = IntMatrix::from_rows(&[[1, -2], [3, 4]]);
        assert_eq!(IntMatrix::identity(1).kronecker(&m), m);
    }

    #[test]
    fn alpha_beta_detection() {
        assert_eq!(IntMatrix::identity(3).scale(5).detect_alpha_beta().unwrap(), Some((5, 0)));
        assert_eq!(IntMatrix::ones(4, 4).detect_alpha_beta().unwrap(), Some((0, 1)));
        let m = IntMatrix::from_rows(&[[1, 2], [3, 1]]);
        assert_eq!(m.detect_alpha_beta().unwrap(), None);
        assert!(matches!(
            IntMatrix::zeros(2, 3).detect_alpha_beta(),
            Err(MatrixError::NotSquare { .. })
        ));
    }

    #[test]
    fn congruence_mod_two() {
        let r = IntMatrix::from_rows(&[[0, 2], [2, 0]]);
        assert!(r.mod2_congruent(&IntMatrix::zeros(2, 2)).unwrap());
        let r = IntMatrix::ones(2, 2);
        let q = IntMatrix::from_rows(&[[-1, 1], [1, -1]]);
        assert!(r.mod2_congruent(&q).unwrap());
        assert!(!IntMatrix::identity(2).mod2_congruent(&IntMatrix::zeros(2, 2)).unwrap());
        assert!(matches!(
            r.mod2_congruent(&IntMatrix::zeros(3, 3)),
            Err(MatrixError::DimensionMismatch(..))
        ));
    }

    #[test]
    fn text_format_is_exact() {
        let m = IntMatrix::from_rows(&[[1, -2, 0], [3, 4, -5]]);
        assert_eq!(m.to_text(), "2 3\n1 -2 0\n3 4 -5\n");
        let lenient = "# comment\n# another\n2  3\n1   -2 0\n3 4  -5\n";
        assert_eq!(IntMatrix::from_text(lenient).unwrap(), m);
        assert!(IntMatrix::from_text("2 2\n1 2\n3\n").is_err());
        assert!(IntMatrix::from_text("2 2\n1 2\n").is_err());
        assert!(IntMatrix::from_text("2 2\n1 x\n3 4\n").is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = IntMatrix::from_rows(&[[i64::MAX, i64::MAX]]);
        let col = IntMatrix::from_rows(&[[1], [1]]);
        assert_eq!(big.try_mul(&col).unwrap_err(), MatrixError::Overflow);
        assert_eq!(big.try_add(&big).unwrap_err(), MatrixError::Overflow);
    }

    #[test]
    fn blocks_and_halving() {
        let i = IntMatrix::identity(2);
        let z = IntMatrix::zeros(2, 2);
        let b = IntMatrix::from_blocks(&[vec![&i, &z], vec![&z, &i]]).unwrap();
        assert_eq!(b, IntMatrix::identity(4));
        assert_eq!(IntMatrix::block_diagonal(&[&i, &i]), IntMatrix::identity(4));
        assert!(matches!(
            IntMatrix::identity(2).halve(),
            Err(MatrixError::OddEntry { row: 0, col: 0, value: 1 })
        ));
        assert_eq!(IntMatrix::identity(2).scale(2).halve().unwrap(), IntMatrix::identity(2));
    }
}
