use thiserror::Error;

/// Errors produced by construction, completion and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration (scheme/dimension mismatch, bad counts, unknown names).
    #[error("configuration error: {0}")]
    Config(String),

    /// Invalid input data (empty clouds, dimension or norm mismatch).
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition does not hold for the given arguments.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A resource budget (grid point count) would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A user-supplied callback returned NaN/infinity or an iteration failed to converge.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A profile or seed violates an admissibility condition.
    #[error("admissibility error: {0}")]
    Admissibility(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
