use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("cannot build a reflection from the zero vector")]
    ZeroVector,

    #[error("matrix is numerically singular at column {column}")]
    Singular { column: usize },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenphase {phase} has no partner within {tol:e}")]
    Unpaired { phase: f64, tol: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("need at least {needed} values, got {found}")]
    TooFewValues { needed: usize, found: usize },

    #[error("expected count per bin is {expected}, below the minimum of 5")]
    UndersampledBins { expected: f64 },

    #[error("algorithm {algorithm} is not available for ensemble {ensemble}")]
    IncompatibleAlgorithm { ensemble: String, algorithm: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
