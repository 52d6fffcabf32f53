//! Residuals of the defining identities of each matrix group / ensemble,
//! measured in the entry-wise max norm.

use num_traits::{Float, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qr::abs_determinant;
use crate::sampler::SymplecticForm;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `max(‖U*U - I‖, ‖UU* - I‖)`.
    Unitarity,
    /// Unitarity plus the largest non-real coefficient.
    Orthogonality,
    /// `‖S J Sᵗ - J‖` with `J = [[0, I], [-I, 0]]`.
    SymplecticJ,
    /// `‖S Ω Sᵗ - Ω‖` with `Ω = I ⊗ e₂`.
    SymplecticOmega,
    /// `‖U - Uᵗ‖`.
    Symmetry,
    /// `‖U + J Uᵗ J‖`.
    SelfDuality,
    /// `||det U| - 1|`.
    DeterminantModulus,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Unitarity => "unitarity",
            Property::Orthogonality => "orthogonality",
            Property::SymplecticJ => "symplectic_J",
            Property::SymplecticOmega => "symplectic_Omega",
            Property::Symmetry => "symmetry",
            Property::SelfDuality => "self_duality",
            Property::DeterminantModulus => "determinant_modulus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub property: Property,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn unitarity_residual<S: Scalar>(m: &Matrix<S>) -> Result<S::Real> {
    let id = Matrix::identity(m.rows());
    let h = m.adjoint();
    let left = (&h.matmul(m)? - &id).max_abs();
    let right = (&m.matmul(&h)? - &id).max_abs();
    Ok(left.max(right))
}

fn symplectic_residual<S: Scalar>(m: &Matrix<S>, form: SymplecticForm) -> Result<S::Real> {
    let f: Matrix<S> = form.to_real::<S::Real>().to_ring();
    let sfst = m.matmul(&f)?.matmul(&m.transpose())?;
    Ok((&sfst - &f).max_abs())
}

/// Max-norm residual of `property` for `m`; `pass` iff `residual ≤ tolerance`.
pub fn check<S: Scalar>(m: &Matrix<S>, property: Property, tolerance: f64) -> Result<ResidualReport> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let n = m.rows();
    let needs_even = matches!(
        property,
        Property::SymplecticJ | Property::SymplecticOmega | Property::SelfDuality
    );
    if needs_even && n % 2 != 0 {
        return Err(Error::DimensionMismatch {
            expected: format!("even dimension for {}", property.as_str()),
            found: n.to_string(),
        });
    }
    let residual = match property {
        Property::Unitarity => unitarity_residual(m)?,
        Property::Orthogonality => {
            let imag = m
                .as_slice()
                .iter()
                .map(|&v| (v - S::from_real(v.re())).modulus())
                .fold(S::Real::zero(), |a, b| a.max(b));
            unitarity_residual(m)?.max(imag)
        }
        Property::SymplecticJ => symplectic_residual(m, SymplecticForm::j_block(n / 2))?,
        Property::SymplecticOmega => symplectic_residual(m, SymplecticForm::omega(n / 2))?,
        Property::Symmetry => (m - &m.transpose()).max_abs(),
        Property::SelfDuality => {
            let j: Matrix<S> = SymplecticForm::j_block(n / 2).to_real::<S::Real>().to_ring();
            let jutj = j.matmul(&m.transpose())?.matmul(&j)?;
            (m + &jutj).max_abs()
        }
        Property::DeterminantModulus => (abs_determinant(m)? - S::Real::one()).abs(),
    };
    let residual = residual.to_f64_lossy();
    Ok(ResidualReport {
        property,
        residual,
        tolerance,
        pass: residual <= tolerance,
    })
}
