use thiserror::Error;

/// Errors raised by the numerical and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("comparison graph is not connected")]
    DisconnectedGraph,
    /// The directed comparison graph is not strongly connected, so the
    /// maximum likelihood estimate does not exist or is not unique.
    #[error("directed comparison graph is not strongly connected; the MLE does not exist")]
    FordViolation,
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("graph on {n} vertices exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
