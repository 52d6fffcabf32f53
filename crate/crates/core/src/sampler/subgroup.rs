//! Subgroup-algorithm samplers: uniform coset representatives multiplied
//! along a chain of subgroups.
//!
//! For O(n) the chain is O(1) ⊂ O(2) ⊂ ⋯ ⊂ O(n) and the representative of
//! O(m)/O(m-1) is the reflection carrying `e₁` to a uniform point of the
//! sphere S^{m-1}. The unitary case uses complex reflections and the complex
//! unit sphere. For permutations the chain is S₁ ⊂ S₂ ⊂ ⋯ ⊂ Sₙ with
//! transpositions as representatives.

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qr::householder_step;
use crate::random::RngStream;
use crate::scalar::{Real, Scalar};

/// Uniform point on the unit sphere of `S^m` (ℝ^m, ℂ^m or ℍ^m): a Gaussian
/// vector divided by its norm.
pub fn sample_sphere<S: Scalar>(m: usize, rng: &mut RngStream) -> Result<Vec<S>> {
    if m == 0 {
        return Err(Error::InvalidDimension(0));
    }
    loop {
        let v: Vec<S> = rng.normal_vector(m);
        let norm = v
            .iter()
            .map(|x| x.norm_sqr())
            .fold(S::Real::zero(), |a, b| a + b)
            .sqrt();
        if norm > S::Real::zero() {
            if m == 1 {
                // exact unit, so that over ℝ the draw is exactly ±1
                return Ok(vec![v[0].sign()]);
            }
            let inv = norm.recip();
            return Ok(v.into_iter().map(|x| x.scale(inv)).collect());
        }
    }
}

/// `H̃ₙ(v̂ₙ)* ⋯ H̃₂(v̂₂)* H̃₁(v̂₁)*`, where `H̃ₘ` is the cancellation-free
/// reflection acting on the last `m` coordinates and `v̂ₘ` is uniform on the
/// sphere in `S^m`. Each adjoint maps `e₁` to `v̂ₘ`; over ℝ the reflections
/// are symmetric so the adjoints are the reflections themselves.
fn householder_product<S: Scalar>(n: usize, rng: &mut RngStream) -> Result<Matrix<S>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut out = Matrix::identity(n);
    for m in 1..=n {
        let v = sample_sphere::<S>(m, rng)?;
        let step = householder_step(&v)?;
        step.apply_to_rows(&mut out, n - m, n - m, true);
    }
    Ok(out)
}

/// Haar orthogonal matrix as a product of `n` reflections.
pub fn sample_orthogonal_householder_product<T: Real>(
    n: usize,
    rng: &mut RngStream,
) -> Result<Matrix<T>> {
    householder_product::<T>(n, rng)
}

/// Haar unitary matrix as a product of `n` complex reflections.
pub fn sample_unitary_householder_product<T: Real>(
    n: usize,
    rng: &mut RngStream,
) -> Result<Matrix<Complex<T>>> {
    householder_product::<Complex<T>>(n, rng)
}

/// Uniform permutation of `{1, .., n}` as `g = gₙ ∘ ⋯ ∘ g₂`, where `gₘ` is the
/// transposition `(j m)` with `j` uniform in `{1, .., m}` (`j = m` being the
/// identity). Returns the images `[g(1), .., g(n)]`.
pub fn sample_permutation(n: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    // 0-based internally: image[i] = g(i), position[v] = g⁻¹(v).
    let mut image: Vec<usize> = (0..n).collect();
    let mut position: Vec<usize> = (0..n).collect();
    for m in 1..n {
        let j = rng.uniform_index(m + 1);
        if j != m {
            // post-compose with (j m): swap the values j and m
            let (pj, pm) = (position[j], position[m]);
            image.swap(pj, pm);
            position.swap(j, m);
        }
    }
    Ok(image.into_iter().map(|v| v + 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check, Property};

    #[test]
    fn sphere_vectors_have_unit_norm() {
        let mut rng = RngStream::new(3, 0);
        for m in 1..8 {
            let v = sample_sphere::<f64>(m, &mut rng).unwrap();
            let n2: f64 = v.iter().map(|x| x * x).sum();
            assert!((n2.sqrt() - 1.0).abs() < 1e-12);
            let w = sample_sphere::<Complex<f64>>(m, &mut rng).unwrap();
            let n2: f64 = w.iter().map(|x| x.norm_sqr()).sum();
            assert!((n2.sqrt() - 1.0).abs() < 1e-12);
        }
        for _ in 0..20 {
            let v = sample_sphere::<f64>(1, &mut rng).unwrap();
            assert!(v[0] == 1.0 || v[0] == -1.0);
        }
    }

    #[test]
    fn smallest_reflection_is_a_sign() {
        let mut rng = RngStream::new(4, 0);
        for _ in 0..20 {
            let v = sample_sphere::<f64>(1, &mut rng).unwrap();
            let h = householder_step(&v).unwrap().to_matrix();
            assert_eq!(h.shape(), (1, 1));
            assert_eq!(h[(0, 0)], v[0]);
        }
    }

    #[test]
    fn products_are_in_the_group() {
        let mut rng = RngStream::new(9, 0);
        let o = sample_orthogonal_householder_product::<f64>(20, &mut rng).unwrap();
        assert!(check(&o, Property::Orthogonality, 1e-12).unwrap().pass);
        let u = sample_unitary_householder_product::<f64>(20, &mut rng).unwrap();
        assert!(check(&u, Property::Unitarity, 1e-12).unwrap().pass);
    }

    #[test]
    fn permutations_are_bijections() {
        let mut rng = RngStream::new(1, 0);
        assert_eq!(sample_permutation(1, &mut rng).unwrap(), vec![1]);
        for n in [2, 5, 17] {
            let mut p = sample_permutation(n, &mut rng).unwrap();
            p.sort_unstable();
            assert_eq!(p, (1..=n).collect::<Vec<_>>());
        }
        assert!(sample_permutation(0, &mut rng).is_err());
    }
}
