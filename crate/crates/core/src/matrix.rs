//! Dense row-major matrices over any [`Scalar`] ring.

use std::ops::{Add, Index, IndexMut, Sub};

use crate::error::{Error, Result};
use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::quaternion::{embed_matrix, Quaternion};
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row-major data. Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal_from(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(S) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Matrix product, keeping the left-to-right order of entry products.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows on the right", self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `s·M`, multiplying every entry from the left.
    pub fn left_scale(&self, s: S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| s * v).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> S::Real {
        self.data
            .iter()
            .map(|v| v.modulus())
            .fold(S::Real::zero(), |a, b| if b > a || b.is_nan() { b } else { a })
    }

    pub fn frobenius_norm(&self) -> S::Real {
        self.data
            .iter()
            .map(|v| v.norm_sqr())
            .fold(S::Real::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> S {
        self.diagonal().into_iter().fold(S::zero(), |a, b| a + b)
    }

    pub(crate) fn data_mut(&mut self) -> &mut [S] {
        &mut self.data
    }
}

impl<T: Real> Matrix<T> {
    /// Lifts a real matrix into any ring over the same reals.
    pub fn to_ring<S: Scalar<Real = T>>(&self) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| S::from_real(v)).collect(),
        }
    }
}

/// A matrix over whichever ring an ensemble lives in, chosen at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum RingMatrix<T: Real> {
    Real(Matrix<T>),
    Complex(Matrix<Complex<T>>),
    Quaternion(Matrix<Quaternion<T>>),
}

impl<T: Real> RingMatrix<T> {
    /// Row count of the matrix as stored (quaternion matrices count quaternion rows).
    pub fn dim(&self) -> usize {
        match self {
            RingMatrix::Real(m) => m.rows(),
            RingMatrix::Complex(m) => m.rows(),
            RingMatrix::Quaternion(m) => m.rows(),
        }
    }

    /// The complex matrix the entries live in: real matrices are lifted,
    /// quaternion matrices replaced by their `2n×2n` representation.
    pub fn to_complex(&self) -> Matrix<Complex<T>> {
        match self {
            RingMatrix::Real(m) => m.to_ring(),
            RingMatrix::Complex(m) => m.clone(),
            RingMatrix::Quaternion(m) => embed_matrix(m).matrix,
        }
    }

    pub fn as_complex(&self) -> Option<&Matrix<Complex<T>>> {
        match self {
            RingMatrix::Complex(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<&Matrix<T>> {
        match self {
            RingMatrix::Real(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_quaternion(&self) -> Option<&Matrix<Quaternion<T>>> {
        match self {
            RingMatrix::Quaternion(m) => Some(m),
            _ => None,
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}
