use carnot::CarnotError;
use heiscf::CfError;
use siegel::SiegelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiophError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Carnot(#[from] CarnotError),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
    #[error(transparent)]
    Cf(#[from] CfError),
}
