//! Scalar traits.
//!
//! [`Real`] abstracts over `f32`/`f64`. [`Scalar`] abstracts over the three
//! scalar rings the samplers work in: the reals, the complex numbers and the
//! Hamilton quaternions. Every ring element carries a conjugation, a norm and
//! a unit "sign" such that `x = x.sign() * |x|`.

use std::fmt::{Debug, Display, LowerExp};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, One, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::quaternion::Quaternion;

pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
    + Scalar<Real = Self>
{
    /// Converts an `f64` constant. Panics only for values the type cannot hold.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in Real")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Element of one of the scalar rings ℝ, ℂ or ℍ.
///
/// Multiplication is not assumed commutative; generic code must keep operand
/// order as written in the mathematics.
pub trait Scalar:
    Copy
    + PartialEq
    + Zero
    + One
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    type Real: Real;

    /// Number of real coefficients per element (1, 2 or 4).
    const REAL_DIM: usize;

    fn from_real(x: Self::Real) -> Self;
    fn conj(self) -> Self;
    fn norm_sqr(self) -> Self::Real;
    /// Modulus `|x|`.
    fn modulus(self) -> Self::Real;
    fn scale(self, s: Self::Real) -> Self;
    fn re(self) -> Self::Real;

    /// Unit factor `u` with `self = u·|self|`; `one()` at zero.
    fn sign(self) -> Self {
        let a = self.modulus();
        if a == Self::Real::zero() {
            Self::one()
        } else {
            self.scale(a.recip())
        }
    }

    /// Largest absolute value among the real coefficients.
    fn max_coeff(self) -> Self::Real;

    /// A standard normal draw for this ring: N(0,1) over ℝ, E|z|² = 1 over ℂ,
    /// E‖q‖² = 2 over ℍ (every real coefficient has variance 1/2 off ℝ).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Real coefficients in canonical order.
    fn coeffs(self) -> Vec<Self::Real>;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {}

        impl Scalar for $t {
            type Real = $t;
            const REAL_DIM: usize = 1;

            fn from_real(x: Self) -> Self {
                x
            }
            fn conj(self) -> Self {
                self
            }
            fn norm_sqr(self) -> Self {
                self * self
            }
            fn modulus(self) -> Self {
                <$t>::abs(self)
            }
            fn scale(self, s: Self) -> Self {
                self * s
            }
            fn re(self) -> Self {
                self
            }
            // sgn(0) = +1
            fn sign(self) -> Self {
                if self < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            }
            fn max_coeff(self) -> Self {
                <$t>::abs(self)
            }
            fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.sample::<$t, _>(StandardNormal)
            }
            fn coeffs(self) -> Vec<Self> {
                vec![self]
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

impl<T: Real> Scalar for Complex<T> {
    type Real = T;
    const REAL_DIM: usize = 2;

    fn from_real(x: T) -> Self {
        Complex::new(x, T::zero())
    }
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn norm_sqr(self) -> T {
        Complex::norm_sqr(&self)
    }
    fn modulus(self) -> T {
        self.re.hypot(self.im)
    }
    fn scale(self, s: T) -> Self {
        Complex::new(self.re * s, self.im * s)
    }
    fn re(self) -> T {
        self.re
    }
    fn max_coeff(self) -> T {
        self.re.abs().max(self.im.abs())
    }
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let s = T::FRAC_1_SQRT_2();
        let re = <T as Scalar>::standard_normal(rng);
        let im = <T as Scalar>::standard_normal(rng);
        Complex::new(re * s, im * s)
    }
    fn coeffs(self) -> Vec<T> {
        vec![self.re, self.im]
    }
}

impl<T: Real> Scalar for Quaternion<T> {
    type Real = T;
    const REAL_DIM: usize = 4;

    fn from_real(x: T) -> Self {
        Quaternion::new(x, T::zero(), T::zero(), T::zero())
    }
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
    fn norm_sqr(self) -> T {
        Quaternion::norm_sqr(self)
    }
    fn modulus(self) -> T {
        Quaternion::norm(self)
    }
    fn scale(self, s: T) -> Self {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
    fn re(self) -> T {
        self.a
    }
    fn max_coeff(self) -> T {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let s = T::FRAC_1_SQRT_2();
        let a = <T as Scalar>::standard_normal(rng);
        let b = <T as Scalar>::standard_normal(rng);
        let c = <T as Scalar>::standard_normal(rng);
        let d = <T as Scalar>::standard_normal(rng);
        Quaternion::new(a * s, b * s, c * s, d * s)
    }
    fn coeffs(self) -> Vec<T> {
        vec![self.a, self.b, self.c, self.d]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_conventions() {
        assert_eq!(Scalar::sign(0.0f64), 1.0);
        assert_eq!(Scalar::sign(-3.0f64), -1.0);
        assert_eq!(Scalar::sign(Complex::<f64>::zero()), Complex::new(1.0, 0.0));
        let z = Complex::new(0.0, 3.0f64);
        assert_eq!(Scalar::sign(z), Complex::new(0.0, 1.0));
        let q = Quaternion::new(0.0, 0.0, 2.0, 0.0f64);
        assert_eq!(Scalar::sign(q), Quaternion::new(0.0, 0.0, 1.0, 0.0));
        assert_eq!(Scalar::sign(Quaternion::<f64>::zero()), Quaternion::one());
    }

    #[test]
    fn sign_times_modulus_reconstructs() {
        let z = Complex::new(-1.5, 0.25f64);
        let back = Scalar::sign(z).scale(Scalar::modulus(z));
        assert!((back - z).norm() < 1e-15);
    }
}
