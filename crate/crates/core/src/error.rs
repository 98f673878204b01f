use thiserror::Error;

use crate::perm::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid alternating sign matrix: {0}")]
    InvalidAsm(String),
    #[error("invalid corner-sum matrix: {0}")]
    InvalidCornerSums(String),
    #[error("invalid bumpless pipe dream: {0}")]
    InvalidBpd(String),
    #[error("illegal droop move: {0}")]
    IllegalDroop(String),
    #[error("{0} is not a lower outside corner")]
    NotACorner(Cell),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("Groebner basis is not linear in {0}")]
    NotLinear(String),
    #[error("monomial ideal is not squarefree")]
    NotSquarefree,
    #[error("multiplicity is infinite: {0}")]
    InfiniteLength(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
