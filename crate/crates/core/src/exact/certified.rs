use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::hermitian::{hermitian_form, hermitian_signature};
use super::integer::{alexander_polynomial, vanishes_on_primitive_roots};
use super::interval::{cos_sin_turn, Interval};
use super::quadratic::QuadraticNumber;
use super::root::RootOfUnity;
use super::scalar::{RootScalar, Scalar, Sign};
use super::ExactError;

pub const DEFAULT_PRECISION_CAP: u32 = 4096;
const INITIAL_PRECISION: u32 = 64;

/// Which arithmetic the signature engine uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Exact quadratic fields for orders dividing 8 or 12, intervals otherwise.
    #[default]
    Auto,
    /// Always use adaptive interval arithmetic.
    IntervalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureConfig {
    pub precision_cap: u32,
    pub strategy: Strategy,
}

impl Default for SignatureConfig {
    fn default() -> Self {
        Self { precision_cap: DEFAULT_PRECISION_CAP, strategy: Strategy::Auto }
    }
}

impl SignatureConfig {
    pub fn interval_only(self) -> Self {
        Self { strategy: Strategy::IntervalOnly, ..self }
    }
}

/// A real number with a decidable sign: exact in `ℚ`, `ℚ(√2)` or `ℚ(√3)`, or
/// given by a family of enclosures that can be refined on demand.
#[derive(Clone)]
pub enum CertifiedReal {
    Rational(BigRational),
    Sqrt2(QuadraticNumber<2>),
    Sqrt3(QuadraticNumber<3>),
    Approx(Arc<dyn Fn(u32) -> Interval + Send + Sync>),
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifiedReal::Rational(x) => write!(f, "Rational({x})"),
            CertifiedReal::Sqrt2(x) => write!(f, "Sqrt2({x})"),
            CertifiedReal::Sqrt3(x) => write!(f, "Sqrt3({x})"),
            CertifiedReal::Approx(e) => write!(f, "Approx({:?})", e(INITIAL_PRECISION)),
        }
    }
}

impl CertifiedReal {
    /// `cos(2π·r/m)`, exact whenever `m` divides 8 or 12.
    pub fn cos_turn(root: RootOfUnity) -> Self {
        // cos θ = 1 − Re(1 − ω)
        if let Some(c) = QuadraticNumber::<2>::one_minus_root(root, 0) {
            return CertifiedReal::Sqrt2(QuadraticNumber::one() - c.re);
        }
        if let Some(c) = QuadraticNumber::<3>::one_minus_root(root, 0) {
            return CertifiedReal::Sqrt3(QuadraticNumber::one() - c.re);
        }
        let (m, r) = (root.order() as i64, root.numerator() as i64);
        CertifiedReal::Approx(Arc::new(move |bits| cos_sin_turn(r, m, bits).0))
    }

    /// `scale·x + shift`.
    pub fn affine(&self, scale: i64, shift: i64) -> Self {
        match self {
            CertifiedReal::Rational(x) => CertifiedReal::Rational(
                x * BigRational::from_integer(BigInt::from(scale))
                    + BigRational::from_integer(BigInt::from(shift)),
            ),
            CertifiedReal::Sqrt2(x) => CertifiedReal::Sqrt2(
                x.clone() * QuadraticNumber::from_int(scale) + QuadraticNumber::from_int(shift),
            ),
            CertifiedReal::Sqrt3(x) => CertifiedReal::Sqrt3(
                x.clone() * QuadraticNumber::from_int(scale) + QuadraticNumber::from_int(shift),
            ),
            CertifiedReal::Approx(e) => {
                let e = Arc::clone(e);
                CertifiedReal::Approx(Arc::new(move |bits| {
                    e(bits) * Interval::from_int(scale) + Interval::from_int(shift)
                }))
            }
        }
    }
}

/// Sign of a certified real. Enclosures are refined by doubling the precision
/// until they exclude zero or `precision_cap` is exceeded.
pub fn certified_sign(x: &CertifiedReal, precision_cap: u32) -> Result<Sign, ExactError> {
    let decided = match x {
        CertifiedReal::Rational(v) => v.sign(),
        CertifiedReal::Sqrt2(v) => v.sign(),
        CertifiedReal::Sqrt3(v) => v.sign(),
        CertifiedReal::Approx(enclose) => {
            let mut bits = INITIAL_PRECISION.min(precision_cap);
            loop {
                if let Some(s) = enclose(bits).sign() {
                    break Some(s);
                }
                if bits >= precision_cap {
                    break None;
                }
                bits = (bits * 2).min(precision_cap);
            }
        }
    };
    decided.ok_or(ExactError::PrecisionExhausted { bits: precision_cap })
}

/// Levine–Tristram signature of the Seifert-type integer matrix `v` at `root`.
///
/// Returns [`ExactError::SingularForm`] when `root` is a zero of
/// `det(V − tVᵀ)`, decided exactly by cyclotomic division before any
/// numerical work.
pub fn signature_at_root(
    dim: usize,
    v: &[i64],
    root: RootOfUnity,
    config: SignatureConfig,
) -> Result<i64, ExactError> {
    let root = root.normalized();
    if root.is_one() || dim == 0 {
        return Ok(0);
    }
    if vanishes_on_primitive_roots(&alexander_polynomial(dim, v), root.order()) {
        return Err(ExactError::SingularForm);
    }
    let m = root.order();
    match config.strategy {
        Strategy::Auto if 8 % m == 0 => exact_signature::<QuadraticNumber<2>>(dim, v, root),
        Strategy::Auto if 12 % m == 0 => exact_signature::<QuadraticNumber<3>>(dim, v, root),
        _ => interval_signature(dim, v, root, config.precision_cap),
    }
}

fn exact_signature<T: RootScalar>(dim: usize, v: &[i64], root: RootOfUnity) -> Result<i64, ExactError> {
    hermitian_signature(&hermitian_form::<T>(dim, v, root, 0)?)
}

fn interval_signature(
    dim: usize,
    v: &[i64],
    root: RootOfUnity,
    cap: u32,
) -> Result<i64, ExactError> {
    let mut bits = INITIAL_PRECISION.min(cap);
    loop {
        match hermitian_signature(&hermitian_form::<Interval>(dim, v, root, bits)?) {
            Err(ExactError::PrecisionExhausted { .. }) if bits < cap => {
                bits = (bits * 2).min(cap);
            }
            Err(ExactError::PrecisionExhausted { .. }) => {
                return Err(ExactError::PrecisionExhausted { bits: cap })
            }
            other => return other,
        }
    }
}
