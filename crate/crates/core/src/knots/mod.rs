//! Seifert matrices, the knot-expression algebra and the invariants computed
//! from them: Levine–Tristram signatures, determinant and Arf invariant.

mod expr;
mod invariants;
mod parse;
mod seifert;

use thiserror::Error;

use crate::exact::{ExactError, RootOfUnity};

pub use expr::KnotExpression;
pub use invariants::{
    arf, arf_from_determinant, arf_with, determinant_at_minus_one, lt_signature,
    lt_signature_with, signature_terms, AtomValues, KnotInvariants, SignatureTerm,
};
pub use parse::parse_expression;
pub use seifert::{torus_seifert, SeifertMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifertMatrix(String),
    #[error("torus knot T({p},{q}) is not supported")]
    UnsupportedTorusParameters { p: i64, q: i64 },
    #[error("invalid cable parameters ({p},{q})")]
    InvalidCableParameters { p: i64, q: i64 },
    #[error("{root} is a root of the Alexander polynomial of {knot}")]
    SignatureAtAlexanderRoot { knot: String, root: RootOfUnity },
    #[error("no value for symbolic atom {name} at {root}")]
    MissingSignature { name: String, root: RootOfUnity },
    #[error("no Arf value for symbolic atom {0}")]
    MissingArf(String),
    #[error("symbolic atom {0} has no determinant")]
    SymbolicDeterminant(String),
    #[error("unknown atom {0}")]
    UnknownAtom(String),
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}
