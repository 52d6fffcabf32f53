use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    /// A computation failed its own validation (non-convergence, broken
    /// pairing, ...).
    #[error("numerical failure: {0}")]
    Numeric(rmgen_core::Error),
}

impl CliError {
    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Numeric(_) => EXIT_VERIFY_FAILED,
        }
    }
}

impl From<rmgen_core::Error> for CliError {
    fn from(e: rmgen_core::Error) -> Self {
        use rmgen_core::Error as E;
        match e {
            E::InvalidDimension(_) | E::IncompatibleAlgorithm { .. } | E::InvalidArgument(_) => CliError::usage(e),
            other => CliError::Numeric(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
