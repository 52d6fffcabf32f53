//! Dense complex Schur decomposition: Householder reduction to upper
//! Hessenberg form, then single-shift QR iteration with Wilkinson shifts and
//! Givens rotations. `A = Z T Z*` with `Z` unitary and `T` upper triangular.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qr::householder_step;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug)]
pub struct Schur<T: Real> {
    pub t: Matrix<Complex<T>>,
    /// Schur vectors; `None` when only eigenvalues were requested.
    pub z: Option<Matrix<Complex<T>>>,
}

impl<T: Real> Schur<T> {
    pub fn eigenvalues(&self) -> Vec<Complex<T>> {
        self.t.diagonal()
    }
}

fn abs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

struct Work<T: Real> {
    n: usize,
    h: Vec<Complex<T>>,
    z: Option<Vec<Complex<T>>>,
    /// Update rows/columns outside the active window (needed for a true Schur form).
    full: bool,
}

impl<T: Real> Work<T> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> Complex<T> {
        self.h[r * self.n + c]
    }

    fn hessenberg(&mut self) {
        let n = self.n;
        if n < 3 {
            return;
        }
        for k in 0..n - 2 {
            let v: Vec<Complex<T>> = (k + 1..n).map(|i| self.at(i, k)).collect();
            if v[1..].iter().all(|x| x.is_zero()) {
                continue;
            }
            let Ok(step) = householder_step(&v) else {
                continue;
            };
            let u = &step.unit_vector;
            let lead = step.leading_factor;
            let two = T::lit(2.0);
            // H·A on rows k+1.., columns k..
            for c in k..n {
                let mut s = Complex::zero();
                for (i, ui) in u.iter().enumerate() {
                    s = s + ui.conj() * self.h[(k + 1 + i) * n + c];
                }
                let s2 = s.scale(two);
                for (i, ui) in u.iter().enumerate() {
                    let x = &mut self.h[(k + 1 + i) * n + c];
                    *x = lead * (*x - ui * s2);
                }
            }
            // A·H* on columns k+1.., all rows; same for Z
            let right = |m: &mut [Complex<T>]| {
                let lc = lead.conj();
                for row in m.chunks_exact_mut(n) {
                    let seg = &mut row[k + 1..];
                    let mut s = Complex::zero();
                    for (x, ui) in seg.iter().zip(u) {
                        s = s + x * ui;
                    }
                    let s2 = s.scale(two);
                    for (x, ui) in seg.iter_mut().zip(u) {
                        *x = lc * (*x - s2 * ui.conj());
                    }
                }
            };
            right(&mut self.h);
            if let Some(z) = self.z.as_mut() {
                right(z);
            }
            self.h[(k + 1) * n + k] = Complex::new(step.source_norm, T::zero());
            for i in k + 2..n {
                self.h[i * n + k] = Complex::zero();
            }
        }
    }

    fn wilkinson_shift(&self, hi: usize) -> Complex<T> {
        let a = self.at(hi - 1, hi - 1);
        let b = self.at(hi - 1, hi);
        let c = self.at(hi, hi - 1);
        let d = self.at(hi, hi);
        let half = T::lit(0.5);
        let p = (a - d).scale(half);
        let bc = b * c;
        let disc = (p * p + bc).sqrt();
        let den1 = p + disc;
        let den2 = p - disc;
        let den = if abs1(den1) >= abs1(den2) { den1 } else { den2 };
        if den.is_zero() {
            d
        } else {
            d - bc / den
        }
    }

    /// One explicit shifted QR sweep `H - μI = QR`, `H ← RQ + μI` on rows and
    /// columns `lo..=hi`.
    fn sweep(&mut self, lo: usize, hi: usize, mu: Complex<T>) {
        let n = self.n;
        for k in lo..=hi {
            self.h[k * n + k] = self.h[k * n + k] - mu;
        }
        let col_end = if self.full { n } else { hi + 1 };
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let a = self.at(k, k);
            let b = self.at(k + 1, k);
            let r = a.norm().hypot(b.norm());
            let (alpha, beta) = if r == T::zero() {
                (Complex::one(), Complex::zero())
            } else {
                (a.unscale(r), b.unscale(r))
            };
            let (ac, bc) = (alpha.conj(), beta.conj());
            for c in k..col_end {
                let x = self.h[k * n + c];
                let y = self.h[(k + 1) * n + c];
                self.h[k * n + c] = ac * x + bc * y;
                self.h[(k + 1) * n + c] = alpha * y - beta * x;
            }
            self.h[(k + 1) * n + k] = Complex::zero();
            rots.push((alpha, beta));
        }
        let row_start = if self.full { 0 } else { lo };
        for (k, &(alpha, beta)) in (lo..hi).zip(&rots) {
            let (ac, bc) = (alpha.conj(), beta.conj());
            for r in row_start..=(k + 1) {
                let x = self.h[r * n + k];
                let y = self.h[r * n + k + 1];
                self.h[r * n + k] = x * alpha + y * beta;
                self.h[r * n + k + 1] = y * ac - x * bc;
            }
            if let Some(z) = self.z.as_mut() {
                for r in 0..n {
                    let x = z[r * n + k];
                    let y = z[r * n + k + 1];
                    z[r * n + k] = x * alpha + y * beta;
                    z[r * n + k + 1] = y * ac - x * bc;
                }
            }
        }
        for k in lo..=hi {
            self.h[k * n + k] = self.h[k * n + k] + mu;
        }
    }

    fn iterate(&mut self, anorm: T) -> Result<()> {
        let n = self.n;
        if n < 2 {
            return Ok(());
        }
        let eps = T::epsilon();
        let floor = eps * anorm;
        let max_total = 30 * n.max(10);
        let mut total = 0usize;
        let mut hi = n - 1;
        let mut its = 0usize;
        while hi > 0 {
            // look for a negligible subdiagonal entry
            let mut lo = hi;
            while lo > 0 {
                let sub = abs1(self.at(lo, lo - 1));
                let tst = abs1(self.at(lo - 1, lo - 1)) + abs1(self.at(lo, lo));
                if sub <= eps * tst || sub <= floor {
                    self.h[lo * n + lo - 1] = Complex::zero();
                    break;
                }
                lo -= 1;
            }
            if lo == hi {
                hi -= 1;
                its = 0;
                continue;
            }
            its += 1;
            total += 1;
            if total > max_total {
                return Err(Error::NoConvergence { iterations: total });
            }
            let mu = if its % 10 == 0 {
                let s = abs1(self.at(hi, hi - 1));
                self.at(hi, hi) + Complex::new(T::lit(0.75) * s, T::zero())
            } else {
                self.wilkinson_shift(hi)
            };
            self.sweep(lo, hi, mu);
        }
        Ok(())
    }
}

/// Schur form of a square complex matrix. With `vectors = false` only the
/// diagonal of `t` (the eigenvalues) is meaningful.
pub fn schur<T: Real>(a: &Matrix<Complex<T>>, vectors: bool) -> Result<Schur<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut w = Work {
        n,
        h: a.as_slice().to_vec(),
        z: vectors.then(|| Matrix::<Complex<T>>::identity(n).as_slice().to_vec()),
        full: vectors,
    };
    w.hessenberg();
    w.iterate(a.frobenius_norm())?;
    let mut t = Matrix::from_vec(n, n, w.h);
    if vectors {
        for r in 1..n {
            for c in 0..r {
                t[(r, c)] = Complex::zero();
            }
        }
    }
    Ok(Schur {
        t,
        z: w.z.map(|z| Matrix::from_vec(n, n, z)),
    })
}

/// Eigenvalues only.
pub fn eigenvalues<T: Real>(a: &Matrix<Complex<T>>) -> Result<Vec<Complex<T>>> {
    Ok(schur(a, false)?.eigenvalues())
}
