use skdepth_core::DepthError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    RowDimension { line: u64, expected: usize, found: usize },
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error("{0}")]
    Config(String),
    #[error("audit failed for query {query_index}: {method} counted {fast}, brute force counted {brute}")]
    AuditMismatch {
        query_index: usize,
        method: &'static str,
        fast: u64,
        brute: u64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
