use thiserror::Error;

/// Failures of a run, each with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable input or an inadmissible configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// A mathematical invariant failed at run time.
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

macro_rules! config_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Config(e.to_string())
            }
        }
    )*};
}

config_errors!(zkernel::ZkError, carnot::CarnotError, siegel::SiegelError, heiscf::CfError, dioph::DiophError);

impl From<hyper::HyperError> for CliError {
    fn from(e: hyper::HyperError) -> Self {
        match e {
            hyper::HyperError::Chain(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<schmidt::SchmidtError> for CliError {
    fn from(e: schmidt::SchmidtError) -> Self {
        use schmidt::SchmidtError as S;
        match e {
            S::Uniqueness { .. } | S::Rule(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}
