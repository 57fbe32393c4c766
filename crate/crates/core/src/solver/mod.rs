//! The case analysis: a table of candidate class pairs, the intersection
//! equation in each cell, reduction by symmetry, and elimination of every
//! surviving case, recorded in a checkable certificate.

mod assumptions;
mod certificate;
mod check;
mod eliminate;
mod solve;
mod table;

use thiserror::Error;

use crate::knots::KnotError;
use crate::obstructions::ObstructionError;

pub use assumptions::Assumptions;
pub use certificate::{
    verify_proof, verify_proof_with, CaseKind, CaseRecord, ProofCertificate, ProofVerdict, TableCellRecord,
};
pub use check::{check_certificate, CheckReport};
pub use eliminate::{
    eliminate_case, eliminate_case_with, evaluation_text, Attempt, CaseOutcome, Component, EliminationRule, Fact,
};
pub use solve::{
    arf_prune, dedupe_solutions, solve_cell, Absorption, CellSolutions, Prune, RawSolution, Side, SolutionEntry,
    SolutionSet, Unresolved,
};
pub use table::{
    build_table, check_table_symmetries, render_cell_value, CellBranch, LinearForm, Poly2, SymmetryCheck,
    TableCell,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("invalid assumptions: {0}")]
    InvalidAssumptions(String),
    #[error("the table needs g4(A) = g4(B) = 1, got {g4_a} and {g4_b}")]
    UnsupportedGenusBound { g4_a: u64, g4_b: u64 },
    #[error("the table uses the component swap, which needs a symmetric link")]
    AsymmetricLink,
    #[error("no symmetry reduces highlighted cell ({row},{col})")]
    SymmetryCheckFailed { row: usize, col: usize },
    #[error("cell ({row},{col}): unsupported equation {equation}")]
    UnsupportedEquationShape { row: usize, col: usize, equation: String },
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
}
