use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarnotError {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("operation needs a Heisenberg group specification")]
    NotHeisenberg,
    #[error(transparent)]
    Kernel(#[from] zkernel::ZkError),
}
