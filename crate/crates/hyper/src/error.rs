use heiscf::CfError;
use siegel::SiegelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HyperError {
    #[error("{0}")]
    Domain(String),
    #[error("horoheight chain broke: {0}")]
    Chain(String),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
    #[error(transparent)]
    Cf(#[from] CfError),
}
