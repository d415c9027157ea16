use thiserror::Error;

/// Errors produced by the algebra, bracket and scenario layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("coordinate index {index} out of range for a chart of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("chart has no distinguished coordinate")]
    MissingDistinguished,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("irregular constraint set: {0}")]
    Irregular(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
