//! Samplers for the classical compact groups and the circular ensembles.
//!
//! Every sampler draws from an explicit [`RngStream`]. [`EnsembleSpec`] ties an
//! ensemble to a seed; sample `i` of a spec always uses stream `(seed, i)`, so
//! batches are reproducible regardless of how they are scheduled.

mod haar;
mod subgroup;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RingMatrix};
use crate::random::RngStream;
use crate::scalar::{Real, Scalar};

pub use haar::{
    sample_coe, sample_cse, sample_cue_wrong, sample_haar_orthogonal, sample_haar_sp_quaternion,
    sample_haar_unitary, sample_haar_usp,
};
pub use subgroup::{
    sample_orthogonal_householder_product, sample_permutation, sample_sphere,
    sample_unitary_householder_product,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Cue,
    Coe,
    Cse,
    Orthogonal,
    Usp,
    SpQuaternion,
    GinibreReal,
    GinibreComplex,
    GinibreQuaternion,
    CueWrong,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 10] = [
        EnsembleKind::Cue,
        EnsembleKind::Coe,
        EnsembleKind::Cse,
        EnsembleKind::Orthogonal,
        EnsembleKind::Usp,
        EnsembleKind::SpQuaternion,
        EnsembleKind::GinibreReal,
        EnsembleKind::GinibreComplex,
        EnsembleKind::GinibreQuaternion,
        EnsembleKind::CueWrong,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EnsembleKind::Cue => "cue",
            EnsembleKind::Coe => "coe",
            EnsembleKind::Cse => "cse",
            EnsembleKind::Orthogonal => "orthogonal",
            EnsembleKind::Usp => "usp",
            EnsembleKind::SpQuaternion => "sp_quaternion",
            EnsembleKind::GinibreReal => "ginibre_real",
            EnsembleKind::GinibreComplex => "ginibre_complex",
            EnsembleKind::GinibreQuaternion => "ginibre_quaternion",
            EnsembleKind::CueWrong => "cue_wrong",
        }
    }

    /// True for ensembles whose samples are unitary (after embedding).
    pub fn is_unitary(self) -> bool {
        !matches!(
            self,
            EnsembleKind::GinibreReal | EnsembleKind::GinibreComplex | EnsembleKind::GinibreQuaternion
        )
    }

    /// Side length of the complex matrix a sample of dimension `n` occupies.
    pub fn complex_dim(self, n: usize) -> usize {
        match self {
            EnsembleKind::Cse
            | EnsembleKind::Usp
            | EnsembleKind::SpQuaternion
            | EnsembleKind::GinibreQuaternion => 2 * n,
            _ => n,
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown ensemble '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Ginibre matrix followed by a QR factorization.
    #[default]
    Qr,
    /// Product of Householder reflections built from uniform sphere vectors.
    #[serde(rename = "householder")]
    HouseholderProduct,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Qr => "qr",
            Algorithm::HouseholderProduct => "householder",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qr" => Ok(Algorithm::Qr),
            "householder" | "householder_product" => Ok(Algorithm::HouseholderProduct),
            _ => Err(Error::InvalidArgument(format!("unknown algorithm '{s}'"))),
        }
    }
}

/// Ensemble, dimension, seed and algorithm: everything that determines a
/// sequence of samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    /// For `cse`, `usp` and `sp_quaternion` the output is `2n×2n` complex
    /// (or `n×n` quaternion).
    pub n: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize, seed: u64, algorithm: Algorithm) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if algorithm == Algorithm::HouseholderProduct
            && !matches!(kind, EnsembleKind::Cue | EnsembleKind::Orthogonal)
        {
            return Err(Error::IncompatibleAlgorithm {
                ensemble: kind.to_string(),
                algorithm: algorithm.to_string(),
            });
        }
        Ok(EnsembleSpec {
            kind,
            n,
            seed,
            algorithm,
        })
    }

    /// Sample number `index`, drawn from stream `(seed, index)`.
    pub fn sample<T: Real>(&self, index: u64) -> Result<RingMatrix<T>> {
        let mut rng = RngStream::new(self.seed, index);
        self.sample_with(&mut rng)
    }

    /// One sample from an explicit stream.
    pub fn sample_with<T: Real>(&self, rng: &mut RngStream) -> Result<RingMatrix<T>> {
        let n = self.n;
        Ok(match (self.kind, self.algorithm) {
            (EnsembleKind::Cue, Algorithm::Qr) => RingMatrix::Complex(sample_haar_unitary(n, rng)?),
            (EnsembleKind::Cue, Algorithm::HouseholderProduct) => {
                RingMatrix::Complex(sample_unitary_householder_product(n, rng)?)
            }
            (EnsembleKind::Orthogonal, alg) => RingMatrix::Real(sample_haar_orthogonal(n, rng, alg)?),
            (EnsembleKind::Coe, _) => RingMatrix::Complex(sample_coe(n, rng)?),
            (EnsembleKind::Cse, _) => RingMatrix::Complex(sample_cse(n, rng)?),
            (EnsembleKind::Usp, _) => RingMatrix::Complex(sample_haar_usp(n, rng)?),
            (EnsembleKind::SpQuaternion, _) => RingMatrix::Quaternion(sample_haar_sp_quaternion(n, rng)?),
            (EnsembleKind::CueWrong, _) => RingMatrix::Complex(sample_cue_wrong(n, rng)?),
            (EnsembleKind::GinibreReal, _) => RingMatrix::Real(rng.ginibre(n)?),
            (EnsembleKind::GinibreComplex, _) => RingMatrix::Complex(rng.ginibre(n)?),
            (EnsembleKind::GinibreQuaternion, _) => RingMatrix::Quaternion(rng.ginibre(n)?),
        })
    }

    /// Samples `indices`, in parallel, returned in index order.
    pub fn sample_batch<T: Real>(&self, indices: Range<u64>) -> Result<Vec<RingMatrix<T>>> {
        self.map_batch(indices, |_, m| Ok(m))
    }

    /// Samples `indices` in parallel and maps each sample through `f`; results
    /// come back in index order whatever the thread count.
    pub fn map_batch<T, R, F>(&self, indices: Range<u64>, f: F) -> Result<Vec<R>>
    where
        T: Real,
        R: Send,
        F: Fn(u64, RingMatrix<T>) -> Result<R> + Sync,
    {
        indices
            .into_par_iter()
            .map(|i| self.sample::<T>(i).and_then(|m| f(i, m)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymplecticVariant {
    /// `J = [[0, I], [-I, 0]]`.
    JBlock,
    /// `Ω = I ⊗ e₂`, the interleaved form matching the quaternion embedding.
    OmegaInterleaved,
}

/// The skew form preserved by the unitary symplectic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub variant: SymplecticVariant,
    /// Full side length `2N`.
    pub size: usize,
}

impl SymplecticForm {
    pub fn j_block(half: usize) -> Self {
        SymplecticForm {
            variant: SymplecticVariant::JBlock,
            size: 2 * half,
        }
    }

    pub fn omega(half: usize) -> Self {
        SymplecticForm {
            variant: SymplecticVariant::OmegaInterleaved,
            size: 2 * half,
        }
    }

    pub fn to_real<T: Real>(&self) -> Matrix<T> {
        let half = self.size / 2;
        let mut m = Matrix::zeros(self.size, self.size);
        for j in 0..half {
            let (a, b) = match self.variant {
                SymplecticVariant::JBlock => (j, half + j),
                SymplecticVariant::OmegaInterleaved => (2 * j, 2 * j + 1),
            };
            m[(a, b)] = T::one();
            m[(b, a)] = -T::one();
        }
        m
    }

    pub fn to_complex<T: Real>(&self) -> Matrix<Complex<T>> {
        self.to_real::<T>().to_ring()
    }
}

/// Reorders an interleaved (`Ω`-form) matrix into `J`-block form via the
/// perfect shuffle `2j ↦ j`, `2j+1 ↦ N+j`, i.e. returns `P M Pᵗ`.
pub fn interleaved_to_block<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let size = m.rows();
    let half = size / 2;
    let unshuffle = |b: usize| if b < half { 2 * b } else { 2 * (b - half) + 1 };
    Matrix::from_fn(size, size, |r, c| m[(unshuffle(r), unshuffle(c))])
}

/// Inverse of [`interleaved_to_block`].
pub fn block_to_interleaved<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let size = m.rows();
    let half = size / 2;
    let shuffle = |i: usize| if i % 2 == 0 { i / 2 } else { half + i / 2 };
    Matrix::from_fn(size, size, |r, c| m[(shuffle(r), shuffle(c))])
}

/// Retries `f` while it reports a singular Ginibre draw (a probability-zero
/// event in exact arithmetic).
pub(crate) fn resample_on_singular<R>(mut f: impl FnMut() -> Result<R>) -> Result<R> {
    const MAX_ATTEMPTS: usize = 64;
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        match f() {
            Err(e @ Error::Singular { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}
