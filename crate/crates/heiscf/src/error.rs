use siegel::SiegelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CfError {
    #[error("continued fractions need n = 1, got n = {0}")]
    Dimension(usize),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
}
