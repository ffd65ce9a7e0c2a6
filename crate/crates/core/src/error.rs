use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incomparable sizes: {0} vs {1}")]
    IncomparableSizes(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("tableau shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("tableau is not semistandard")]
    NotSemistandard,
    #[error("tableau is not standard")]
    NotStandard,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid orbit key: {0}")]
    InvalidOrbitKey(String),
    #[error("rank or parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("subspace not contained: {0}")]
    NotContained(String),
    #[error("invalid module type: {0}")]
    InvalidType(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
