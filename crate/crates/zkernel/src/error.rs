use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZkError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value out of supported range: {0}")]
    Range(String),
}

impl ZkError {
    pub fn domain(msg: impl Into<String>) -> Self {
        ZkError::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        ZkError::Parse(msg.into())
    }
}
