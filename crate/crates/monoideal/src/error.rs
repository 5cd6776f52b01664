use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator set must be non-empty")]
    EmptyGenerators,

    #[error("exponent vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a 2-variable ideal, got {0} variables")]
    NotTwoVariables(usize),

    #[error("ideal is not zero-dimensional: missing a pure power of variable {missing}")]
    NotZeroDimensional { missing: usize },

    #[error("the unit ideal has no staircase form")]
    UnitIdeal,

    #[error("invalid staircase sequences: {0}")]
    InvalidStaircase(String),

    #[error("power exponent must be at least 1")]
    ZeroPower,

    #[error("ideal is not m-full: {0}")]
    NotMFull(String),

    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),

    #[error("colon by zero polynomial")]
    ColonByZero,

    #[error("resource ceiling exceeded: {0}")]
    ResourceExceeded(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
