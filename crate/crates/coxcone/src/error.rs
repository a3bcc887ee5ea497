use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a generalized Cartan matrix at ({i},{j}): {reason}")]
    NotGcm { i: usize, j: usize, reason: String },
    #[error("root base violation: {0}")]
    RootBaseViolation(String),
    #[error("invalid characteristic: {0}")]
    InvalidCharacteristic(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension bound exceeded: {0}")]
    DimensionBound(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("not found within {0} steps")]
    NotFound(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionBound(_) | Error::SizeBound(_) | Error::NotFound(_) => 3,
            Error::Internal(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
