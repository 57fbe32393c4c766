use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::complex::Complex;
use super::root::RootOfUnity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i64(v: i64) -> Self {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_nonzero(self) -> bool {
        self != Sign::Zero
    }
}

/// An ordered field in which the signature engine can run.
///
/// `sign` returns `None` when the value cannot be decided at the current
/// representation (interval enclosures straddling zero). Exact types always
/// decide. The float impls decide by plain comparison and are not certified.
pub trait Scalar:
    Clone
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn sign(&self) -> Option<Sign>;

    /// Multiplicative inverse; `None` if the value is (or may be) zero.
    fn recip(&self) -> Option<Self>;

    /// Approximate absolute value, used only to rank pivot candidates.
    fn magnitude(&self) -> f64;

    fn from_int(v: i64) -> Self;
}

/// Scalars in which `1 − ω` can be represented for (some) roots of unity.
pub trait RootScalar: Scalar {
    /// Real and imaginary parts of `1 − ω`, or `None` when `ω` lies outside the
    /// field. `precision_bits` only matters for approximate scalars.
    fn one_minus_root(root: RootOfUnity, precision_bits: u32) -> Option<Complex<Self>>;
}

impl Scalar for BigRational {
    fn sign(&self) -> Option<Sign> {
        Some(if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        })
    }

    fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| num_traits::Inv::inv(self.clone()))
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::MAX)
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl RootScalar for BigRational {
    fn one_minus_root(root: RootOfUnity, _: u32) -> Option<Complex<Self>> {
        let w = root.normalized();
        let (re, im) = match (w.order(), w.numerator()) {
            (1, _) => (0, 0),
            (2, _) => (2, 0),
            (4, 1) => (1, -1),
            (4, 3) => (1, 1),
            _ => return None,
        };
        Some(Complex::new(Self::from_int(re), Self::from_int(im)))
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn sign(&self) -> Option<Sign> {
                if self.is_nan() {
                    None
                } else if *self > 0.0 {
                    Some(Sign::Positive)
                } else if *self < 0.0 {
                    Some(Sign::Negative)
                } else {
                    Some(Sign::Zero)
                }
            }

            fn recip(&self) -> Option<Self> {
                (*self != 0.0).then(|| 1.0 / *self)
            }

            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }

            fn from_int(v: i64) -> Self {
                v as $t
            }
        }

        impl RootScalar for $t {
            fn one_minus_root(root: RootOfUnity, _: u32) -> Option<Complex<Self>> {
                let theta = std::f64::consts::TAU * root.numerator() as f64 / root.order() as f64;
                Some(Complex::new((1.0 - theta.cos()) as $t, (-theta.sin()) as $t))
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);
