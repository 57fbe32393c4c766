//! Certified arithmetic and the Hermitian signature engine.
//!
//! The engine is generic over [`Scalar`]. Exact fields (`ℚ`, `ℚ(√2)`, `ℚ(√3)`)
//! cover every root of unity of order dividing 8 or 12; other orders fall back
//! to [`Interval`] arithmetic with adaptive precision.

mod certified;
mod complex;
mod hermitian;
pub mod integer;
mod interval;
mod quadratic;
mod root;
mod scalar;

use thiserror::Error;

pub use certified::{
    certified_sign, signature_at_root, CertifiedReal, SignatureConfig, Strategy,
    DEFAULT_PRECISION_CAP,
};
pub use complex::Complex;
pub use hermitian::{hermitian_form, hermitian_signature, HermitianMatrix};
pub use interval::{cos_sin_turn, pi, Interval};
pub use quadratic::QuadraticNumber;
pub use root::RootOfUnity;
pub use scalar::{RootScalar, Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("hermitian form is singular")]
    SingularForm,
    #[error("could not certify a pivot sign with {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },
    #[error("{0} is not representable in the requested scalar field")]
    UnsupportedRoot(RootOfUnity),
    #[error("expected {expected} matrix entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
}
