use thiserror::Error;

/// Failure modes shared by every walk module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("distributions are over different label sets")]
    LabelMismatch,
    #[error("exact arithmetic overflow: {0}")]
    Overflow(String),
    #[error("matrix is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("operator is not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("graph is not regular")]
    NotRegular,
    #[error("matrix is not stochastic: {0}")]
    NotStochastic(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("position lies outside the ballistic cone")]
    OutsideCone,
    #[error("target probability not reached within {0} steps")]
    Unreachable(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(WalkError::InvalidParameter(msg.into()))
}
