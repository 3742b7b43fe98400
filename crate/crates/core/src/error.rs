use thiserror::Error;

/// Errors raised by the algebraic engines, the expression front end and the
/// numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("{0}")]
    Semantic(String),

    #[error("grading mismatch: {0}")]
    GradingMismatch(&'static str),

    #[error("invalid ku-module summand: {0}")]
    InvalidSummand(String),

    #[error("free-group factor {0} has no moduli statement; only surfaces and circles are allowed")]
    FreeGroupFactor(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("input validation failed: {0}")]
    InvalidInput(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Semantic,
    Numeric,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. } => ErrorClass::Parse,
            Error::Semantic(_)
            | Error::GradingMismatch(_)
            | Error::InvalidSummand(_)
            | Error::FreeGroupFactor(_)
            | Error::OutOfRange(_) => ErrorClass::Semantic,
            Error::Numeric(_) | Error::InvalidInput(_) => ErrorClass::Numeric,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
