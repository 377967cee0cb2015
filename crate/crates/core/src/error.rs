use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator is not skew-hermitian (offending term {0})")]
    NotSkewHermitian(String),
    #[error("operators live in different ambient spaces")]
    AmbientMismatch,
    #[error("closure exceeded the cap of {cap} dimensions (partial dimension {partial})")]
    CapExceeded { cap: usize, partial: usize },
    #[error("space is not closed under the commutator")]
    NotClosed,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("classification ambiguous: candidates {0:?}")]
    Ambiguous(Vec<String>),
    #[error("structure analysis failed: {0}")]
    Structure(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
