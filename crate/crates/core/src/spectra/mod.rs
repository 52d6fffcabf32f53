//! Eigenphases of unitary matrices and the statistics built on them.

mod eigen;
mod stats;

pub use eigen::{eigenvalues, schur, Schur};
pub use stats::{
    chi_square_uniform, density_histogram, histogram, kolmogorov_survival, ks_test, ks_two_sample,
    spacing_sup_norm, surmise_cdf, uniform_phase_cdf, wigner_surmise, ChiSquareResult, GofReport,
    HistogramAccumulator, HistogramData, KsResult, SurmiseBeta,
};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Real, Scalar};

/// Sorted eigenphases of one unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenphaseSet<T> {
    pub n: usize,
    /// Ascending, each in `[0, 2π)`.
    pub phases: Vec<T>,
    /// `max_k ‖U v_k − λ_k v_k‖` with unit `v_k`.
    pub max_residual: T,
    /// `max_k ||λ_k| − 1|`.
    pub max_modulus_deviation: T,
}

impl<T: Real> EigenphaseSet<T> {
    /// Wrap already-computed phases (reduced to `[0, 2π)` and sorted).
    pub fn from_phases(phases: impl IntoIterator<Item = T>) -> Self {
        let mut phases: Vec<T> = phases.into_iter().map(wrap_phase).collect();
        phases.sort_by(|a, b| a.partial_cmp(b).expect("phase is NaN"));
        EigenphaseSet {
            n: phases.len(),
            phases,
            max_residual: T::zero(),
            max_modulus_deviation: T::zero(),
        }
    }
}

/// Normalized nearest-neighbour gaps, `s_j = n/2π (θ_{j+1} − θ_j)` with
/// `θ_{n+1} = θ_1 + 2π`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacingSample<T> {
    pub s: Vec<T>,
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_phase<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let mut t = theta % tau;
    if t < T::zero() {
        t += tau;
    }
    if t >= tau {
        t = T::zero();
    }
    t
}

fn unit_phase<T: Real>(z: Complex<T>) -> T {
    wrap_phase(z.im.atan2(z.re))
}

/// Eigenvector of upper-triangular `t` for the eigenvalue `t[k][k]`, by back
/// substitution with unit `k`-th component.
fn triangular_eigenvector<T: Real>(t: &Matrix<Complex<T>>, k: usize, guard: T) -> Vec<Complex<T>> {
    let n = t.rows();
    let lambda = t[(k, k)];
    let mut y = vec![Complex::<T>::zero(); n];
    y[k] = Complex::one();
    for j in (0..k).rev() {
        let mut s = Complex::<T>::zero();
        for m in j + 1..=k {
            s = s + t[(j, m)] * y[m];
        }
        let mut d = t[(j, j)] - lambda;
        if d.norm() < guard {
            d = Complex::new(guard, T::zero());
        }
        y[j] = -s / d;
    }
    y
}

/// Eigenphases of a unitary matrix, sorted in `[0, 2π)`, with the largest
/// eigenpair residual.
pub fn eigenphases<T: Real>(u: &Matrix<Complex<T>>) -> Result<EigenphaseSet<T>> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", u.rows(), u.cols()),
        });
    }
    let n = u.rows();
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let gram = u.adjoint().matmul(u)?;
    let unitarity = (&gram - &Matrix::identity(n)).max_abs();
    let limit = T::lit(1e-8).max(T::epsilon() * T::lit(1e3));
    if !(unitarity < limit) {
        return Err(Error::NotUnitary {
            residual: unitarity.to_f64_lossy(),
        });
    }

    let s = schur(u, true)?;
    let z = s.z.as_ref().expect("vectors requested");
    let guard = T::epsilon() * u.frobenius_norm();
    let mut phases = Vec::with_capacity(n);
    let mut max_residual = T::zero();
    let mut max_dev = T::zero();
    for k in 0..n {
        let lambda = s.t[(k, k)];
        phases.push(unit_phase(lambda));
        max_dev = max_dev.max((lambda.norm() - T::one()).abs());

        let y = triangular_eigenvector(&s.t, k, guard);
        let mut v = vec![Complex::<T>::zero(); n];
        for (r, vr) in v.iter_mut().enumerate() {
            for (m, ym) in y.iter().enumerate().take(k + 1) {
                *vr = *vr + z[(r, m)] * ym;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        let mut res = T::zero();
        for r in 0..n {
            let mut acc = Complex::<T>::zero();
            for (c, vc) in v.iter().enumerate() {
                acc = acc + u[(r, c)] * vc;
            }
            res += (acc - lambda * v[r]).norm_sqr();
        }
        max_residual = max_residual.max(res.sqrt() / norm);
    }
    phases.sort_by(|a, b| a.partial_cmp(b).expect("phase is NaN"));
    Ok(EigenphaseSet {
        n,
        phases,
        max_residual,
        max_modulus_deviation: max_dev,
    })
}

/// Normalized spacings including the wrap-around gap; their sum is `n`.
pub fn spacings<T: Real>(e: &EigenphaseSet<T>) -> Result<SpacingSample<T>> {
    let n = e.phases.len();
    if n < 2 {
        return Err(Error::TooFewValues { needed: 2, found: n });
    }
    let scale = T::from_usize(n).expect("usize fits") / T::TAU();
    let mut s: Vec<T> = e.phases.windows(2).map(|w| (w[1] - w[0]) * scale).collect();
    s.push((e.phases[0] + T::TAU() - e.phases[n - 1]) * scale);
    Ok(SpacingSample { s })
}

fn circular_distance<T: Real>(a: T, b: T) -> T {
    let d = (a - b).abs();
    d.min(T::TAU() - d)
}

/// Collapse a doubly degenerate spectrum to one phase per Kramers pair.
pub fn dedup_kramers<T: Real>(e: &EigenphaseSet<T>, tol: T) -> Result<EigenphaseSet<T>> {
    let n = e.phases.len();
    if n % 2 == 1 {
        return Err(Error::Unpaired {
            phase: e.phases[n - 1].to_f64_lossy(),
            tol: tol.to_f64_lossy(),
        });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    // A pair can straddle 0 ≡ 2π, in which case the pairing is shifted by one.
    let mut first_bad = None;
    for offset in [0usize, 1] {
        let mut out = Vec::with_capacity(n / 2);
        let mut bad = None;
        for p in 0..n / 2 {
            let a = e.phases[(2 * p + offset) % n];
            let b = e.phases[(2 * p + offset + 1) % n];
            if !(circular_distance(a, b) <= tol) {
                bad = Some(a);
                break;
            }
            out.push(if (a - b).abs() > T::PI() { a.min(b) } else { a });
        }
        match bad {
            None => {
                let mut d = EigenphaseSet::from_phases(out);
                d.max_residual = e.max_residual;
                d.max_modulus_deviation = e.max_modulus_deviation;
                return Ok(d);
            }
            Some(a) => {
                first_bad.get_or_insert(a);
            }
        }
    }
    Err(Error::Unpaired {
        phase: first_bad.expect("one offset failed").to_f64_lossy(),
        tol: tol.to_f64_lossy(),
    })
}

/// Largest mismatch between a phase set and its mirror `θ ↦ 2π − θ`, as for
/// real orthogonal or symplectic matrices whose spectra close under conjugation.
pub fn conjugation_symmetry_residual<T: Real>(e: &EigenphaseSet<T>) -> T {
    let mut mirrored: Vec<T> = e.phases.iter().map(|&t| wrap_phase(T::TAU() - t)).collect();
    mirrored.sort_by(|a, b| a.partial_cmp(b).expect("phase is NaN"));
    let mut worst = T::zero();
    for &t in &e.phases {
        let best = mirrored
            .iter()
            .map(|&m| circular_distance(t, m))
            .fold(T::infinity(), T::min);
        worst = worst.max(best);
    }
    worst
}
