use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Index triple violates parity or range constraints.
    #[error("invalid index: {0}")]
    Index(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("series or integral failed to converge: {0}")]
    Convergence(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
