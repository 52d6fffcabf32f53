//! Ginibre-plus-QR samplers and the circular ensembles built from them.

use num_complex::Complex;
use num_traits::One;

use super::{interleaved_to_block, resample_on_singular, Algorithm, SymplecticForm};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::qr::{phase_fix, qr_decompose, QrConvention};
use crate::quaternion::{embed_matrix, Quaternion};
use crate::random::RngStream;
use crate::scalar::{Real, Scalar};

/// Haar unitary: complex Ginibre `Z`, any QR, then `Q' = QΛ` with
/// `Λ = diag(r_jj/|r_jj|)`.
pub fn sample_haar_unitary<T: Real>(n: usize, rng: &mut RngStream) -> Result<Matrix<Complex<T>>> {
    resample_on_singular(|| {
        let z = rng.ginibre::<Complex<T>>(n)?;
        let f = qr_decompose(&z, QrConvention::Raw)?;
        Ok(phase_fix(&f)?.q)
    })
}

/// Haar orthogonal, by positive-diagonal QR of a real Ginibre matrix or by a
/// product of sphere-vector reflections.
pub fn sample_haar_orthogonal<T: Real>(
    n: usize,
    rng: &mut RngStream,
    algorithm: Algorithm,
) -> Result<Matrix<T>> {
    match algorithm {
        Algorithm::Qr => positive_qr_sample::<T>(n, rng),
        Algorithm::HouseholderProduct => super::sample_orthogonal_householder_product(n, rng),
    }
}

/// Haar element of Sp(n), the quaternionic unitary group.
pub fn sample_haar_sp_quaternion<T: Real>(
    n: usize,
    rng: &mut RngStream,
) -> Result<Matrix<Quaternion<T>>> {
    positive_qr_sample::<Quaternion<T>>(n, rng)
}

/// Haar element of USp(2n) in `J`-block form: the complex representation of
/// an Sp(n) sample, reordered by the perfect shuffle.
pub fn sample_haar_usp<T: Real>(n: usize, rng: &mut RngStream) -> Result<Matrix<Complex<T>>> {
    let s = sample_haar_sp_quaternion::<T>(n, rng)?;
    Ok(interleaved_to_block(&embed_matrix(&s).matrix))
}

/// COE matrix `U = WWᵗ` with `W` Haar on U(n).
pub fn sample_coe<T: Real>(n: usize, rng: &mut RngStream) -> Result<Matrix<Complex<T>>> {
    let w = sample_haar_unitary::<T>(n, rng)?;
    w.matmul(&w.transpose())
}

/// CSE matrix `U = -W J Wᵗ J` (size `2n`) with `W` Haar on U(2n).
pub fn sample_cse<T: Real>(n: usize, rng: &mut RngStream) -> Result<Matrix<Complex<T>>> {
    let w = sample_haar_unitary::<T>(2 * n, rng)?;
    let j = SymplecticForm::j_block(n).to_complex::<T>();
    let wj = w.matmul(&j)?;
    let wjwt = wj.matmul(&w.transpose())?;
    let u = wjwt.matmul(&j)?;
    Ok(u.left_scale(-Complex::<T>::one()))
}

/// Deliberately biased: raw Householder QR of a complex Ginibre matrix with no
/// phase correction. The result is unitary but not Haar distributed.
pub fn sample_cue_wrong<T: Real>(n: usize, rng: &mut RngStream) -> Result<Matrix<Complex<T>>> {
    resample_on_singular(|| {
        let z = rng.ginibre::<Complex<T>>(n)?;
        Ok(qr_decompose(&z, QrConvention::Raw)?.q)
    })
}

fn positive_qr_sample<S: Scalar>(n: usize, rng: &mut RngStream) -> Result<Matrix<S>> {
    resample_on_singular(|| {
        let z = rng.ginibre::<S>(n)?;
        Ok(qr_decompose(&z, QrConvention::PositiveDiagonal)?.q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check, Property};

    #[test]
    fn unitary_one_by_one_has_unit_modulus() {
        let mut rng = RngStream::new(1, 0);
        let u = sample_haar_unitary::<f64>(1, &mut rng).unwrap();
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn membership_of_each_sampler() {
        let mut rng = RngStream::new(17, 3);
        let u = sample_haar_unitary::<f64>(12, &mut rng).unwrap();
        assert!(check(&u, Property::Unitarity, 1e-12).unwrap().pass);

        let o = sample_haar_orthogonal::<f64>(12, &mut rng, Algorithm::Qr).unwrap();
        assert!(check(&o, Property::Orthogonality, 1e-12).unwrap().pass);

        let coe = sample_coe::<f64>(20, &mut rng).unwrap();
        let rep = check(&coe, Property::Symmetry, 1e-12).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(check(&coe, Property::Unitarity, 1e-12).unwrap().pass);

        let cse = sample_cse::<f64>(10, &mut rng).unwrap();
        assert_eq!(cse.shape(), (20, 20));
        assert!(check(&cse, Property::SelfDuality, 1e-12).unwrap().pass);
        assert!(check(&cse, Property::Unitarity, 1e-12).unwrap().pass);

        let usp = sample_haar_usp::<f64>(5, &mut rng).unwrap();
        assert!(check(&usp, Property::SymplecticJ, 1e-10).unwrap().pass);
        assert!(check(&usp, Property::Unitarity, 1e-10).unwrap().pass);

        let wrong = sample_cue_wrong::<f64>(10, &mut rng).unwrap();
        assert!(check(&wrong, Property::Unitarity, 1e-12).unwrap().pass);
    }

    #[test]
    fn sp_quaternion_samples() {
        let mut rng = RngStream::new(5, 0);
        let s = sample_haar_sp_quaternion::<f64>(4, &mut rng).unwrap();
        let e = embed_matrix(&s).matrix;
        assert!(check(&e, Property::Unitarity, 1e-10).unwrap().pass);
        assert!(check(&e, Property::SymplecticOmega, 1e-10).unwrap().pass);
        let ss = s.adjoint().matmul(&s).unwrap();
        assert!((&ss - &Matrix::identity(4)).max_abs() < 1e-10);

        let one = sample_haar_sp_quaternion::<f64>(1, &mut rng).unwrap();
        assert!((one[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn usp_two_is_su_two() {
        let mut rng = RngStream::new(6, 0);
        for _ in 0..20 {
            let s = sample_haar_usp::<f64>(1, &mut rng).unwrap();
            let det = s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(1, 0)];
            assert!((det - Complex::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn single_precision_path() {
        let mut rng = RngStream::new(5, 0);
        let u = sample_haar_unitary::<f32>(16, &mut rng).unwrap();
        assert!(check(&u, Property::Unitarity, 1e-5).unwrap().pass);
        let o = sample_haar_orthogonal::<f32>(16, &mut rng, Algorithm::HouseholderProduct).unwrap();
        assert!(check(&o, Property::Orthogonality, 1e-5).unwrap().pass);
    }
}
