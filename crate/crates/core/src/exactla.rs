//! Exact linear algebra over a [`Scalar`] field.
//!
//! Dense matrices, Gauss-Jordan elimination, nullspaces in reduced
//! row-echelon normal form, and positive-definiteness by leading principal
//! minors. There is no floating point on any path.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() {
                    acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
                }
            }
            acc
        }))
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self[(i, j)].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduced row-echelon form of a list of row vectors of common length
/// `cols`. Returns the nonzero rows (pivot entries equal to one) and the
/// pivot column of each.
pub fn rref_rows<T: Scalar>(mut rows: Vec<Vec<T>>, cols: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Reduced row-echelon form of `a`, with its pivot columns.
pub fn rref<T: Scalar>(a: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let (rows, pivots) = rref_rows(a.to_rows(), a.cols());
    let mut out = Matrix::zeros(a.rows(), a.cols());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    (out, pivots)
}

pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    rref_rows(a.to_rows(), a.cols()).1.len()
}

/// Rank of a family of vectors of length `cols`.
pub fn rank_of<T: Scalar>(vectors: &[Vec<T>], cols: usize) -> usize {
    rref_rows(vectors.to_vec(), cols).1.len()
}

/// Solves `a x = b` for square invertible `a`.
pub fn solve_linear<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let augmented: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (rows, pivots) = rref_rows(augmented, n + 1);
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return Err(LinalgError::SingularMatrix);
    }
    Ok(rows.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of the kernel of `a`.
///
/// One vector per free column in ascending order; the free coordinate is one,
/// the other free coordinates are zero, and pivot coordinates are read off the
/// reduced row-echelon form.
pub fn nullspace<T: Scalar>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let (rows, pivots) = rref_rows(a.to_rows(), a.cols());
    let cols = a.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by fraction-based elimination. Panics on non-square input.
pub fn determinant<T: Scalar>(a: &Matrix<T>) -> T {
    assert!(a.is_square(), "determinant of non-square matrix");
    let n = a.rows();
    let mut m = a.to_rows();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for j in c..n {
                let v = m[c][j].clone();
                if !v.is_zero() {
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
    }
    det
}

/// Leading principal minors `det(S[..k, ..k])` for `k = 1..=n`.
pub fn leading_principal_minors<T: Scalar>(s: &Matrix<T>) -> Vec<T> {
    (1..=s.rows())
        .map(|k| determinant(&s.leading_block(k)))
        .collect()
}

/// Sylvester's criterion on a symmetric matrix.
pub fn is_positive_definite<T: Scalar>(s: &Matrix<T>) -> Result<bool, LinalgError> {
    if !s.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    Ok(leading_principal_minors(s).iter().all(|m| m.is_positive()))
}
