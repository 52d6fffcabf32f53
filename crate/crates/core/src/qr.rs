//! Householder QR over ℝ, ℂ and ℍ.
//!
//! A step built from a vector `v` with first entry `x₁ = q·|x₁|` uses
//!
//! ```text
//!   û = (v̂ + q·e₁) / ‖v̂ + q·e₁‖,    H = -q̄ (I - 2ûû*)
//! ```
//!
//! which maps `v` to `‖v‖·e₁`: the diagonal of `R` comes out real and
//! positive, and the "+q" branch never cancels. Over ℝ, `q = sgn(x₁)`; over ℂ,
//! `q = e^{iθ}`; over ℍ, `q = x₁/‖x₁‖`. The raw convention drops the leading
//! factor (`H' = I - 2ûû*`), which sends `v` to `-q‖v‖·e₁`, so the diagonal of
//! `R` carries whatever phase the data had. That is what a stock QR routine
//! hands back, and why its `Q` is not Haar distributed without [`phase_fix`].

use serde::{Deserialize, Serialize};

use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QrConvention {
    /// Every `r_jj` real and strictly positive; the unique factorization.
    PositiveDiagonal,
    /// Diagonal phases left as the plain reflections produce them.
    Raw,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QrFactors<S: Scalar> {
    pub q: Matrix<S>,
    pub r: Matrix<S>,
    pub convention: QrConvention,
}

impl<S: Scalar> QrFactors<S> {
    /// `‖QR - Z‖_F / ‖Z‖_F`.
    pub fn relative_residual(&self, z: &Matrix<S>) -> S::Real {
        let qr = self.q.matmul(&self.r).expect("square factors");
        (&qr - z).frobenius_norm() / z.frobenius_norm()
    }
}

/// One reflection `H = leading_factor · (I - 2ûû*)` of length `pivot_index`.
#[derive(Clone, Debug, PartialEq)]
pub struct HouseholderStep<S: Scalar> {
    pub pivot_index: usize,
    pub unit_vector: Vec<S>,
    pub leading_factor: S,
    /// `‖v‖` of the vector the step was built from.
    pub source_norm: S::Real,
}

fn vector_norm<S: Scalar>(v: &[S]) -> S::Real {
    v.iter()
        .map(|x| x.norm_sqr())
        .fold(S::Real::zero(), |a, b| a + b)
        .sqrt()
}

impl<S: Scalar> HouseholderStep<S> {
    fn build(v: &[S], raw: bool) -> Result<Self> {
        let norm = vector_norm(v);
        if v.is_empty() || norm == S::Real::zero() || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        let q = v[0].sign();
        let inv = norm.recip();
        let mut w: Vec<S> = v.iter().map(|x| x.scale(inv)).collect();
        w[0] += q;
        let wn = vector_norm(&w).recip();
        for x in &mut w {
            *x = x.scale(wn);
        }
        Ok(HouseholderStep {
            pivot_index: v.len(),
            unit_vector: w,
            leading_factor: if raw { S::one() } else { -q.conj() },
            source_norm: norm,
        })
    }

    /// `H` as a dense `m×m` matrix.
    pub fn to_matrix(&self) -> Matrix<S> {
        let u = &self.unit_vector;
        let two = S::Real::lit(2.0);
        Matrix::from_fn(self.pivot_index, self.pivot_index, |i, j| {
            let delta = if i == j { S::one() } else { S::zero() };
            self.leading_factor * (delta - (u[i] * u[j].conj()).scale(two))
        })
    }

    /// `x ← H x`.
    pub fn apply(&self, x: &mut [S]) {
        self.reflect(x);
        if self.leading_factor != S::one() {
            for v in x.iter_mut() {
                *v = self.leading_factor * *v;
            }
        }
    }

    /// `x ← H* x`.
    pub fn apply_adjoint(&self, x: &mut [S]) {
        if self.leading_factor != S::one() {
            let l = self.leading_factor.conj();
            for v in x.iter_mut() {
                *v = l * *v;
            }
        }
        self.reflect(x);
    }

    fn reflect(&self, x: &mut [S]) {
        let u = &self.unit_vector;
        let dot = u
            .iter()
            .zip(x.iter())
            .fold(S::zero(), |acc, (&ui, &xi)| acc + ui.conj() * xi);
        let dot2 = dot.scale(S::Real::lit(2.0));
        for (xi, &ui) in x.iter_mut().zip(u) {
            *xi -= ui * dot2;
        }
    }

    /// Applies `H` (or `H*`) to rows `offset..offset+m`, columns `cols..`, of `a`.
    pub(crate) fn apply_to_rows(
        &self,
        a: &mut Matrix<S>,
        offset: usize,
        cols: usize,
        adjoint: bool,
    ) -> u64 {
        let ncols = a.cols();
        let width = ncols - cols;
        if width == 0 {
            return 0;
        }
        let m = self.pivot_index;
        let data = a.data_mut();
        let lead = if adjoint {
            self.leading_factor.conj()
        } else {
            self.leading_factor
        };
        let scale_rows = |data: &mut [S]| {
            if lead != S::one() {
                for i in 0..m {
                    let row = &mut data[(offset + i) * ncols + cols..(offset + i + 1) * ncols];
                    for v in row.iter_mut() {
                        *v = lead * *v;
                    }
                }
            }
        };
        if adjoint {
            scale_rows(data);
        }
        // w = u* A, then A -= 2 u w
        let mut w = vec![S::zero(); width];
        for (i, &ui) in self.unit_vector.iter().enumerate() {
            let uc = ui.conj();
            let row = &data[(offset + i) * ncols + cols..(offset + i + 1) * ncols];
            for (wc, &v) in w.iter_mut().zip(row) {
                *wc += uc * v;
            }
        }
        let two = S::Real::lit(2.0);
        for (i, &ui) in self.unit_vector.iter().enumerate() {
            let u2 = ui.scale(two);
            let row = &mut data[(offset + i) * ncols + cols..(offset + i + 1) * ncols];
            for (v, &wc) in row.iter_mut().zip(&w) {
                *v -= u2 * wc;
            }
        }
        if !adjoint {
            scale_rows(data);
        }
        3 * (m * width) as u64
    }
}

/// The cancellation-free reflection with `H(v̂)·v̂ = e₁`.
pub fn householder_step<S: Scalar>(v: &[S]) -> Result<HouseholderStep<S>> {
    HouseholderStep::build(v, false)
}

/// The plain reflection `I - 2ûû*` with the same `û`, mapping `v` to `-q‖v‖e₁`.
pub fn householder_step_raw<S: Scalar>(v: &[S]) -> Result<HouseholderStep<S>> {
    HouseholderStep::build(v, true)
}

pub fn qr_decompose<S: Scalar>(z: &Matrix<S>, convention: QrConvention) -> Result<QrFactors<S>> {
    qr_decompose_counted(z, convention).map(|(f, _)| f)
}

/// As [`qr_decompose`], also returning the number of scalar multiply-adds the
/// reflections performed (triangularization plus explicit assembly of `Q`).
pub fn qr_decompose_counted<S: Scalar>(
    z: &Matrix<S>,
    convention: QrConvention,
) -> Result<(QrFactors<S>, u64)> {
    let n = z.rows();
    if !z.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", z.rows(), z.cols()),
        });
    }
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let threshold = S::Real::lit(n as f64) * S::Real::epsilon() * z.frobenius_norm();
    let mut a = z.clone();
    let mut steps = Vec::with_capacity(n);
    let mut ops = 0u64;
    for k in 0..n {
        let v: Vec<S> = (k..n).map(|i| a[(i, k)]).collect();
        let step = match convention {
            QrConvention::PositiveDiagonal => householder_step(&v),
            QrConvention::Raw => householder_step_raw(&v),
        }
        .map_err(|_| Error::Singular { column: k })?;
        if step.source_norm <= threshold {
            return Err(Error::Singular { column: k });
        }
        ops += step.apply_to_rows(&mut a, k, k + 1, false);
        a[(k, k)] = match convention {
            QrConvention::PositiveDiagonal => S::from_real(step.source_norm),
            QrConvention::Raw => -v[0].sign().scale(step.source_norm),
        };
        for i in k + 1..n {
            a[(i, k)] = S::zero();
        }
        steps.push(step);
    }
    // Q = H₁* H̃₂* ⋯ H̃ₙ*, accumulated right to left.
    let mut q = Matrix::identity(n);
    for (k, step) in steps.iter().enumerate().rev() {
        ops += step.apply_to_rows(&mut q, k, k, true);
    }
    Ok((
        QrFactors {
            q,
            r: a,
            convention,
        },
        ops,
    ))
}

/// The phase correction `Q' = QΛ`, `R' = Λ⁻¹R` with `Λ = diag(r_jj/|r_jj|)`.
///
/// The diagonal of `R'` is written as the exact moduli `|r_jj|`.
pub fn phase_fix<S: Scalar>(f: &QrFactors<S>) -> Result<QrFactors<S>> {
    let n = f.r.rows();
    let mut lambda = Vec::with_capacity(n);
    for j in 0..n {
        let r = f.r[(j, j)];
        if r.modulus() == S::Real::zero() {
            return Err(Error::Singular { column: j });
        }
        lambda.push(r.sign());
    }
    let q = Matrix::from_fn(f.q.rows(), f.q.cols(), |i, j| f.q[(i, j)] * lambda[j]);
    let r = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            S::from_real(f.r[(i, i)].modulus())
        } else {
            lambda[i].conj() * f.r[(i, j)]
        }
    });
    Ok(QrFactors {
        q,
        r,
        convention: QrConvention::PositiveDiagonal,
    })
}

/// `|det Z|` (the Dieudonné determinant modulus over ℍ) as the product of the
/// diagonal moduli of a triangularization. Zero for singular input.
pub fn abs_determinant<S: Scalar>(z: &Matrix<S>) -> Result<S::Real> {
    if !z.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", z.rows(), z.cols()),
        });
    }
    let n = z.rows();
    let mut a = z.clone();
    let mut det = S::Real::one();
    for k in 0..n {
        let v: Vec<S> = (k..n).map(|i| a[(i, k)]).collect();
        match householder_step(&v) {
            Ok(step) => {
                det *= step.source_norm;
                step.apply_to_rows(&mut a, k, k + 1, false);
            }
            Err(_) => return Ok(S::Real::zero()),
        }
    }
    Ok(det)
}
