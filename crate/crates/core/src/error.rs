use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("operator {0} cannot act from the right")]
    SideMismatch(String),

    #[error("operator {0} requires an even ambient dimension, got {1}")]
    DimensionParity(String, usize),

    #[error("variable roster or chart mismatch: {0}")]
    RosterMismatch(String),

    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("degenerate sector: {0}")]
    Degenerate(String),

    #[error("linear system has no solution: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn range(msg: impl Into<String>) -> Self {
        Error::ParameterOutOfRange(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
