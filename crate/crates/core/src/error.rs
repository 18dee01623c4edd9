use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GctkError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,
    #[error("pole along alpha = beta did not cancel in expansion term {term}")]
    NonCancellingPole { term: usize },
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("expected a one-dimensional solution space, found dimension {0}")]
    SolutionDimension(usize),
    #[error("value out of supported range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, GctkError>;
