use siegel::{RationalSiegelPoint, SiegelError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchmidtError {
    #[error("inadmissible game configuration: {0}")]
    Config(String),
    #[error("round {round}: {} rationals in the candidate window, at most one allowed: {candidates:?}", candidates.len())]
    Uniqueness { round: u32, candidates: Vec<RationalSiegelPoint> },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("rule violation: {0}")]
    Rule(String),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
}
