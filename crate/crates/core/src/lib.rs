//! Haar-random matrices from the classical compact groups and Dyson's
//! circular ensembles, with the spectral statistics used to validate them.
//!
//! Two sampling routes are provided: QR factorization of a Ginibre matrix
//! with the diagonal of `R` made real positive, and products of random
//! Householder reflections. All numerical code is generic over [`Real`]
//! (`f32` or `f64`); the aliases below fix the common `f64` instantiation.
//!
//! ```
//! use rmgen_core::{check, sample_haar_unitary, Property, RngStream};
//!
//! let mut rng = RngStream::new(7, 0);
//! let u = sample_haar_unitary::<f64>(5, &mut rng).unwrap();
//! assert!(check(&u, Property::Unitarity, 1e-12).unwrap().pass);
//! ```

pub mod checks;
pub mod error;
pub mod matrix;
pub mod qr;
pub mod quaternion;
pub mod random;
pub mod sampler;
pub mod scalar;
pub mod spectra;

pub use checks::{check, Property, ResidualReport};
pub use error::{Error, Result};
pub use matrix::{Matrix, RingMatrix};
pub use qr::{
    abs_determinant, householder_step, householder_step_raw, phase_fix, qr_decompose, qr_decompose_counted,
    HouseholderStep, QrConvention, QrFactors,
};
pub use quaternion::{embed_matrix, embed_scalar, from_embedding, q_mul, ComplexEmbedding, Quaternion};
pub use random::{ginibre_matrix, NormalScalarKind, RngStream};
pub use sampler::*;
pub use scalar::{Real, Scalar};
pub use spectra::{
    chi_square_uniform, dedup_kramers, density_histogram, eigenphases, ks_test, ks_two_sample, spacings,
    wigner_surmise, EigenphaseSet, GofReport, HistogramData, SpacingSample, SurmiseBeta,
};

pub use num_complex::{Complex, Complex32, Complex64};

pub type Quaternion64 = Quaternion<f64>;
pub type Quaternion32 = Quaternion<f32>;
pub type RealMatrix = Matrix<f64>;
pub type ComplexMatrix = Matrix<Complex64>;
pub type QuaternionMatrix = Matrix<Quaternion64>;
pub type RealMatrix32 = Matrix<f32>;
pub type ComplexMatrix32 = Matrix<Complex32>;
pub type QuaternionMatrix32 = Matrix<Quaternion32>;
