//! Seedable random streams and standard normal variates over ℝ, ℂ and ℍ.
//!
//! A stream is identified by `(seed, stream_index)`. The pair is folded into a
//! single 64-bit key with SplitMix64,
//!
//! ```text
//!   key = splitmix64(seed ^ splitmix64(stream_index))
//! ```
//!
//! and the key is expanded (four further SplitMix64 outputs) into the 256-bit
//! seed of a ChaCha8 generator. Distinct stream indices therefore run
//! independent generators with no shared state. Normal variates come from the
//! ziggurat sampler of `rand_distr`.

use num_complex::Complex;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RingMatrix};
use crate::quaternion::Quaternion;
use crate::scalar::{Real, Scalar};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One step of the SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The 64-bit key a `(seed, stream_index)` pair is reduced to.
pub fn stream_key(seed: u64, stream_index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream_index))
}

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut state = stream_key(seed, stream_index);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            state = splitmix64(state);
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        RngStream {
            seed,
            stream_index,
            rng: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// A draw from N(0, 1).
    pub fn normal_real<T: Real>(&mut self) -> T {
        <T as Scalar>::standard_normal(self)
    }

    /// Complex normal with independent N(0, 1/2) parts, so `E|z|² = 1`.
    pub fn normal_complex<T: Real>(&mut self) -> Complex<T> {
        Complex::<T>::standard_normal(self)
    }

    /// Quaternion with four independent N(0, 1/2) coefficients, so `E‖q‖² = 2`.
    pub fn normal_quaternion<T: Real>(&mut self) -> Quaternion<T> {
        Quaternion::<T>::standard_normal(self)
    }

    /// Uniform draw from `{0, .., bound - 1}`.
    pub fn uniform_index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    /// `n×n` matrix of i.i.d. standard normals of the ring `S`, filled in
    /// row-major order.
    pub fn ginibre<S: Scalar>(&mut self, n: usize) -> Result<Matrix<S>> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let data = (0..n * n).map(|_| S::standard_normal(self)).collect();
        Ok(Matrix::from_vec(n, n, data))
    }

    /// Vector of `m` i.i.d. standard normals of the ring `S`.
    pub fn normal_vector<S: Scalar>(&mut self, m: usize) -> Vec<S> {
        (0..m).map(|_| S::standard_normal(self)).collect()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalScalarKind {
    Real,
    Complex,
    Quaternion,
}

pub fn ginibre_matrix<T: Real>(
    n: usize,
    kind: NormalScalarKind,
    rng: &mut RngStream,
) -> Result<RingMatrix<T>> {
    Ok(match kind {
        NormalScalarKind::Real => RingMatrix::Real(rng.ginibre(n)?),
        NormalScalarKind::Complex => RingMatrix::Complex(rng.ginibre(n)?),
        NormalScalarKind::Quaternion => RingMatrix::Quaternion(rng.ginibre(n)?),
    })
}
