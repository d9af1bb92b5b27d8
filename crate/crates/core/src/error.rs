use thiserror::Error;

/// Errors raised by instance construction, oracles and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("exact solver budget exceeded: {size} > {budget}")]
    BudgetExceeded { size: usize, budget: usize },

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("instance kind `{found}` does not fit {expected}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid_param(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
