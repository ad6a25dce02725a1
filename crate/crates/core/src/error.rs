use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("field `{field}` is not defined at {point:?}")]
    Domain { field: String, point: Vec<f64> },

    #[error("region too thin: accepted {accepted} of {attempts} candidate samples")]
    RegionTooThin { accepted: usize, attempts: usize },

    #[error("region declared additively closed but {left:?} + {right:?} is not a member")]
    NotAdditivelyClosed { left: Vec<f64>, right: Vec<f64> },

    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
