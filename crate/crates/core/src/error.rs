use std::io;

use thiserror::Error;

/// Errors raised by ingestion, analysis, generation, and experiment runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    /// Caller asked for something the inputs do not permit (bad parameter,
    /// direction mismatch, out-of-range node).
    #[error("{0}")]
    Usage(String),

    /// Inputs are well-formed but the requested quantity does not exist for
    /// them (e.g. every node has degree zero).
    #[error("{0}")]
    Degenerate(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("internal: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    InFile {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub(crate) fn in_file(path: impl Into<String>, source: Error) -> Self {
        Error::InFile {
            path: path.into(),
            source: Box::new(source),
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 usage, 2 data, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Parse { .. }
            | Error::EmptyInput
            | Error::Degenerate(_)
            | Error::Io { .. }
            | Error::Csv(_) => 2,
            Error::Internal(_) => 3,
            Error::InFile { source, .. } => source.exit_code(),
        }
    }
}
