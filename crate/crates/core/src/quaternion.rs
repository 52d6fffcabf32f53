//! Hamilton quaternions and their complex 2×2 / 2n×2n representation.
//!
//! A quaternion `a + b·i₁ + c·i₂ + d·i₃` embeds as
//!
//! ```text
//!   [  z   w ]      z = a + ib
//!   [ -w̄   z̄ ]      w = c + id
//! ```
//!
//! so that `1 ↦ I₂`, `i₁ ↦ diag(i, -i)`, `i₂ ↦ [[0,1],[-1,0]]` and
//! `i₃ ↦ [[0,i],[i,0]]`. A quaternion matrix embeds blockwise: entry `(j,k)`
//! occupies rows `2j..2j+2` and columns `2k..2k+2` of the complex matrix, which
//! makes `i₂·I` map to `Ω = I ⊗ e₂` exactly.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> Quaternion<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn i1() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn i2() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn i3() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(self) -> T {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Multiplicative inverse `q̄ / ‖q‖²`.
    pub fn inv(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == T::zero() {
            None
        } else {
            Some(self.conj().scale(n2.recip()))
        }
    }

    /// The 2×2 complex representation `[[z, w], [-w̄, z̄]]`.
    pub fn to_complex_2x2(self) -> [[Complex<T>; 2]; 2] {
        let z = Complex::new(self.a, self.b);
        let w = Complex::new(self.c, self.d);
        [[z, w], [-w.conj(), z.conj()]]
    }
}

/// Hamilton product `p·q`.
pub fn q_mul<T: Real>(p: Quaternion<T>, q: Quaternion<T>) -> Quaternion<T> {
    Quaternion::new(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )
}

impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        q_mul(self, rhs)
    }
}

impl<T: Real> Zero for Quaternion<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl<T: Real> One for Quaternion<T> {
    fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<T: Real> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Real> SubAssign for Quaternion<T> {
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl<T: Real> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i₁ + {}i₂ + {}i₃", self.a, self.b, self.c, self.d)
    }
}

/// The 2×2 complex representation of a single quaternion, as a matrix.
pub fn embed_scalar<T: Real>(q: Quaternion<T>) -> Matrix<Complex<T>> {
    let blk = q.to_complex_2x2();
    Matrix::from_fn(2, 2, |r, c| blk[r][c])
}

/// A quaternion matrix together with its `2n×2n` complex representation.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexEmbedding<T: Real> {
    pub source_dim: usize,
    pub matrix: Matrix<Complex<T>>,
}

/// Blockwise complex representation `Q₀⊗I₂ + Q₁⊗e₁ + Q₂⊗e₂ + Q₃⊗e₃`.
pub fn embed_matrix<T: Real>(q: &Matrix<Quaternion<T>>) -> ComplexEmbedding<T> {
    let (rows, cols) = q.shape();
    let mut m = Matrix::zeros(2 * rows, 2 * cols);
    for j in 0..rows {
        for k in 0..cols {
            let blk = q[(j, k)].to_complex_2x2();
            for (r, row) in blk.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    m[(2 * j + r, 2 * k + c)] = v;
                }
            }
        }
    }
    ComplexEmbedding {
        source_dim: rows,
        matrix: m,
    }
}

/// Recovers the quaternion matrix whose embedding is closest to `m`.
///
/// Each 2×2 block `[[p, r], [s, t]]` is projected onto the quaternion form by
/// `z = (p + t̄)/2`, `w = (r - s̄)/2`. Also returns the max-norm distance
/// between `m` and the embedding of the result, which is zero exactly when `m`
/// represents a quaternion matrix with real coefficients.
pub fn from_embedding<T: Real>(m: &Matrix<Complex<T>>) -> Result<(Matrix<Quaternion<T>>, T)> {
    let (rows, cols) = m.shape();
    if rows % 2 != 0 || cols % 2 != 0 {
        return Err(Error::DimensionMismatch {
            expected: "even dimensions".into(),
            found: format!("{rows}x{cols}"),
        });
    }
    let half = T::lit(0.5);
    let q = Matrix::from_fn(rows / 2, cols / 2, |j, k| {
        let p = m[(2 * j, 2 * k)];
        let r = m[(2 * j, 2 * k + 1)];
        let s = m[(2 * j + 1, 2 * k)];
        let t = m[(2 * j + 1, 2 * k + 1)];
        let z = (p + t.conj()).scale(half);
        let w = (r - s.conj()).scale(half);
        Quaternion::new(z.re, z.im, w.re, w.im)
    });
    let back = embed_matrix(&q).matrix;
    let residual = (&back - m).max_abs();
    Ok((q, residual))
}
