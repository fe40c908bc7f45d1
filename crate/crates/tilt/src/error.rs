//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("mismatched algebras: {0}")]
    AlgebraMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("path basis still growing at length {bound}: infinite-dimensional or bound too low")]
    BasisOverflow { bound: usize },

    #[error("enumeration budget exceeded at dimension vector {dim_vector:?}: {candidates} candidates > budget {budget}")]
    BudgetExceeded {
        dim_vector: Vec<usize>,
        candidates: u128,
        budget: u128,
    },

    #[error("enumeration requires a finite field, got {0}")]
    OracleNeedsFiniteField(String),

    #[error("cannot certify a direct-sum decomposition: {0}")]
    Decomposition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
