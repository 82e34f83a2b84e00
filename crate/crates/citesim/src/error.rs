//! Crate-wide error type and exit-code mapping.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside a mathematical function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The data cannot support the requested fit (empty group, zero
    /// residual variance, all-zero counts, ...).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// Configuration problems. Every offending key is listed.
    #[error("invalid configuration: {}", .0.join("; "))]
    Validation(Vec<String>),

    /// A malformed row in an input data file.
    #[error("{}:{line}: {message}", path.display())]
    MalformedRow {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code: 0 success, 2 validation error, 3 runtime/data error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
