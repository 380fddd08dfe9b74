use thiserror::Error;

/// Errors shared by all model modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Time integration left the physical state space.
    #[error("integration failure: {0}")]
    Integration(String),
    /// A steady-state or gain formula was evaluated above the pump threshold
    /// where the underlying linear system has no decaying solution.
    #[error("above pump threshold: {0}")]
    AboveThreshold(String),
    /// A parameter inversion found no consistent solution.
    #[error("fit failed: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
