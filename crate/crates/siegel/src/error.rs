use carnot::CarnotError;
use thiserror::Error;
use zkernel::ZkError;

#[derive(Debug, Error)]
pub enum SiegelError {
    #[error("point violates 2·Re(v) = |u|²: {0}")]
    Constraint(String),
    #[error("dimension mismatch: expected n = {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0}")]
    Domain(String),
    #[error("enumeration limit exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Kernel(#[from] ZkError),
    #[error(transparent)]
    Carnot(#[from] CarnotError),
}

impl SiegelError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        SiegelError::Domain(msg.into())
    }
}
