//! Scalar traits shared by the exact and floating-point parts of the crate.
//!
//! Everything algebraic in this crate is written against [`Scalar`] (a ring
//! with conjugation) or [`Field`] (adds division). Exact rationals and
//! Gaussian rationals back the identity checks; `f64` and `Complex<f64>`
//! back the exponentials and lattice numerics.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Complex conjugate; identity on real scalars.
    fn conj(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_c64(&self) -> Complex64;

    /// Absolute value as an `f64`, used for pivot selection and tolerances.
    fn magnitude(&self) -> f64;

    /// True for rational and Gaussian-rational scalars.
    fn is_exact() -> bool;

    /// Exact scalars ignore `tol` and test for zero.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    /// Text form used by the JSON multivector format: real part and, for
    /// complex scalars, the imaginary part.
    fn to_text_parts(&self) -> (String, Option<String>);

    fn from_text_parts(re: &str, im: Option<&str>) -> Result<Self>;
}

/// A scalar with division.
pub trait Field: Scalar + Div<Output = Self> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl<T: Scalar + Div<Output = T>> Field for T {}

pub trait RealScalar: Field + PartialOrd + num_traits::Num {
    fn as_f64(&self) -> f64;

    /// Square root when it exists in the type: any nonnegative float, or a
    /// rational whose numerator and denominator are perfect squares.
    fn try_sqrt(&self) -> Option<Self>;
}

pub trait ComplexScalar: Field {
    type Real: RealScalar;

    fn i() -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;

    fn from_real(re: Self::Real) -> Self {
        Self::from_parts(re, Self::Real::zero())
    }
}

/// Floating-point reals usable by the spin-group numerics.
pub trait FloatScalar: RealScalar + Float {
    const DEFAULT_TOLERANCE: f64;

    fn from_f64(v: f64) -> Self;
}

macro_rules! impl_float {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn conj(&self) -> Self {
                *self
            }
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn to_c64(&self) -> Complex64 {
                Complex64::new(*self as f64, 0.0)
            }
            fn magnitude(&self) -> f64 {
                (*self as f64).abs()
            }
            fn is_exact() -> bool {
                false
            }
            fn to_text_parts(&self) -> (String, Option<String>) {
                (format!("{}", self), None)
            }
            fn from_text_parts(re: &str, im: Option<&str>) -> Result<Self> {
                let value = parse_float(re)? as $t;
                match im {
                    Some(im) if parse_float(im)? != 0.0 => Err(Error::Parse(format!(
                        "real coefficient {re} carries a nonzero imaginary part {im}"
                    ))),
                    _ => Ok(value),
                }
            }
        }

        impl RealScalar for $t {
            fn as_f64(&self) -> f64 {
                *self as f64
            }
            fn try_sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| self.sqrt())
            }
        }

        impl FloatScalar for $t {
            const DEFAULT_TOLERANCE: f64 = $tol;

            fn from_f64(v: f64) -> Self {
                v as $t
            }
        }
    };
}

impl_float!(f64, 1e-10);
impl_float!(f32, 1e-4);

fn parse_float(text: &str) -> Result<f64> {
    if let Some((num, den)) = text.split_once('/') {
        let num: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
        let den: f64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
        return Ok(num / den);
    }
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {text:?}")))
}

macro_rules! impl_ratio {
    ($int:ty, $from:expr) => {
        impl Scalar for Ratio<$int> {
            fn conj(&self) -> Self {
                self.clone()
            }
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer($from(v))
            }
            fn to_c64(&self) -> Complex64 {
                Complex64::new(self.as_f64(), 0.0)
            }
            fn magnitude(&self) -> f64 {
                self.as_f64().abs()
            }
            fn is_exact() -> bool {
                true
            }
            fn to_text_parts(&self) -> (String, Option<String>) {
                (format!("{}/{}", self.numer(), self.denom()), None)
            }
            fn from_text_parts(re: &str, im: Option<&str>) -> Result<Self> {
                let value = parse_ratio::<$int>(re)?;
                match im {
                    Some(im) if !parse_ratio::<$int>(im)?.is_zero() => Err(Error::Parse(
                        format!("real coefficient {re} carries a nonzero imaginary part {im}"),
                    )),
                    _ => Ok(value),
                }
            }
        }

        impl RealScalar for Ratio<$int> {
            fn as_f64(&self) -> f64 {
                // `Ratio::to_f64` handles large numerators and denominators.
                ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
            }
            fn try_sqrt(&self) -> Option<Self> {
                if *self < Self::zero() {
                    return None;
                }
                let r = Ratio::new(self.numer().sqrt(), self.denom().sqrt());
                (&r * &r == *self).then_some(r)
            }
        }
    };
}

impl_ratio!(i64, |v: i64| v);
impl_ratio!(BigInt, BigInt::from);

fn parse_ratio<I>(text: &str) -> Result<Ratio<I>>
where
    I: Clone + num_integer::Integer + std::str::FromStr,
{
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: I = num.parse().map_err(|_| bad())?;
    let den: I = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

impl<R: RealScalar> Scalar for Complex<R> {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(R::from_i64(v), R::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.as_f64(), self.im.as_f64())
    }
    fn magnitude(&self) -> f64 {
        self.re.as_f64().hypot(self.im.as_f64())
    }
    fn is_exact() -> bool {
        R::is_exact()
    }
    fn to_text_parts(&self) -> (String, Option<String>) {
        (self.re.to_text_parts().0, Some(self.im.to_text_parts().0))
    }
    fn from_text_parts(re: &str, im: Option<&str>) -> Result<Self> {
        let re = R::from_text_parts(re, None)?;
        let im = match im {
            Some(im) => R::from_text_parts(im, None)?,
            None => R::zero(),
        };
        Ok(Complex::new(re, im))
    }
}

impl<R: RealScalar> ComplexScalar for Complex<R> {
    type Real = R;

    fn i() -> Self {
        Complex::new(R::zero(), R::one())
    }
    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }
    fn re(&self) -> R {
        self.re.clone()
    }
    fn im(&self) -> R {
        self.im.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussianRational, Rational};

    #[test]
    fn rational_text_round_trip() {
        let x = Rational::new(BigInt::from(-3), BigInt::from(4));
        let (re, im) = x.to_text_parts();
        assert_eq!(re, "-3/4");
        assert!(im.is_none());
        assert_eq!(Rational::from_text_parts(&re, None).unwrap(), x);
        assert_eq!(
            Rational::from_text_parts("5", None).unwrap(),
            Rational::from_i64(5)
        );
        assert!(Rational::from_text_parts("1/0", None).is_err());
        assert!(Rational::from_text_parts("1", Some("1/2")).is_err());
    }

    #[test]
    fn gaussian_conjugation() {
        let z = GaussianRational::from_parts(Rational::from_i64(1), Rational::from_ratio(1, 2));
        let c = z.conj();
        assert_eq!(c.im(), -Rational::from_ratio(1, 2));
        assert_eq!((z.clone() * c).im(), Rational::zero());
        assert!(GaussianRational::is_exact());
        assert_eq!(GaussianRational::i() * GaussianRational::i(), -GaussianRational::one());
    }

    #[test]
    fn float_negligible() {
        assert!(1e-13f64.is_negligible(1e-12));
        assert!(!1e-11f64.is_negligible(1e-12));
        assert!(!Rational::from_ratio(1, 1_000_000_000).is_negligible(1.0));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Rational::from_ratio(9, 4).try_sqrt(), Some(Rational::from_ratio(3, 2)));
        assert_eq!(Rational::from_i64(2).try_sqrt(), None);
        assert_eq!(Rational::from_i64(-1).try_sqrt(), None);
        assert_eq!(4.0f64.try_sqrt(), Some(2.0));
    }
}
