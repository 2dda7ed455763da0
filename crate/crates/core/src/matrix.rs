//! Dense exact matrices over ℚ(i) and the elimination routines everything
//! else is built on.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{GaussianRational, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Row-major `rows × cols` matrix of Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<GaussianRational>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<GaussianRational>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
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

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| c * a).collect() }
    }

    pub fn trace(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for k in 0..self.rows.min(self.cols) {
            acc += &self[(k, k)];
        }
        acc
    }

    pub fn pow(&self, k: u32) -> ExactMatrix {
        assert!(self.is_square());
        let mut out = ExactMatrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &self[(r, j)];
                    self[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, each with a 1 in
    /// its free coordinate.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots)
    }

    /// Solves `A x = b`. Returns the particular solution with every free
    /// variable set to zero together with a nullspace basis, or `None` when the
    /// system is inconsistent.
    pub fn solve_affine(&self, b: &[GaussianRational]) -> Result<Option<(Vector, Vec<Vector>)>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = aug[(row, self.cols)].clone();
        }
        let coefficient_part = ExactMatrix::from_fn(self.rows, self.cols, |i, j| aug[(i, j)].clone());
        let null = nullspace_from_rref(&coefficient_part, &pivots);
        Ok(Some((x, null)))
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn determinant(&self) -> GaussianRational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = GaussianRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= &d;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = GaussianRational::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }
}

fn nullspace_from_rref(r: &ExactMatrix, pivots: &[usize]) -> Vec<Vector> {
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![GaussianRational::zero(); cols];
        v[free] = GaussianRational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(row, free)];
        }
        basis.push(v);
    }
    basis
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));

        let z = ExactMatrix::zeros(2, 2);
        assert_eq!(z.rref(), (z.clone(), vec![]));

        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rref(), (m(&[&[1, 2], &[0, 0]]), vec![0]));
    }

    #[test]
    fn solve_affine_examples() {
        let (x, null) = ExactMatrix::identity(2).solve_affine(&[q(1), GaussianRational::i()]).unwrap().unwrap();
        assert_eq!(x, vec![q(1), GaussianRational::i()]);
        assert!(null.is_empty());

        let (x, null) = m(&[&[1, 1]]).solve_affine(&[q(2)]).unwrap().unwrap();
        assert_eq!(x, vec![q(2), q(0)]);
        assert_eq!(null, vec![vec![q(-1), q(1)]]);

        assert_eq!(m(&[&[0]]).solve_affine(&[q(1)]).unwrap(), None);
    }

    #[test]
    fn solve_affine_dimension_mismatch() {
        assert_eq!(
            ExactMatrix::identity(2).solve_affine(&[q(1)]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.determinant(), q(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), ExactMatrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), q(-1));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, -2i64..3), r * c).prop_map(move |v| {
                let rows: Vec<Vec<GaussianRational>> = v
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(a, b)| GaussianRational::complex(a, 1, b, 1)).collect())
                    .collect();
                ExactMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(a in small_matrix()) {
            let (r, p) = a.rref();
            let (r2, p2) = r.rref();
            prop_assert_eq!(r, r2);
            prop_assert_eq!(p, p2);
        }

        #[test]
        fn solve_affine_solutions_are_exact(a in small_matrix(), seed in proptest::collection::vec(-3i64..4, 4)) {
            // b chosen in the column space half the time
            let x0: Vec<GaussianRational> = (0..a.cols()).map(|j| GaussianRational::from_int(seed[j % 4])).collect();
            let b = a.mul_vec(&x0);
            let (x, null) = a.solve_affine(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul_vec(&x), b);
            prop_assert_eq!(null.len(), a.cols() - a.rank());
            for v in null {
                prop_assert!(crate::scalar::is_zero_vector(&a.mul_vec(&v)));
            }
        }
    }
}
