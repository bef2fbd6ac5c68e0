use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Register size or basis index outside the representable range.
    #[error("size error: {0}")]
    Size(String),
    /// Input data failed a structural check (non-unitary matrix, duplicate labels, ...).
    #[error("validation error: {0}")]
    Validation(String),
    #[error("argument error: {0}")]
    Argument(String),
    /// Value outside the domain a codec can encode.
    #[error("domain error: {0}")]
    Domain(String),
    /// Measurement outcome of the wrong kind for the interpretation applied.
    #[error("kind error: {0}")]
    Kind(String),
    #[error("shape error: expected {expected} values, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("not found: {0}")]
    NotFound(String),
    /// An assignment table no longer covers a state it should.
    #[error("corrupted assignment table: {0}")]
    Corruption(String),
    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("boundary specification is not linear (max defect {defect:.3e})")]
    NonlinearBoundary { defect: f64 },
    #[error("simulation not worthwhile: {charged} parameter steps exceed the limit of {limit}")]
    NotWorthwhile { charged: u64, limit: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
