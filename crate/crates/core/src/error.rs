use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error at data row {row}, column `{column}`: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("invalid decimal literal `{0}`")]
    InvalidDecimal(String),

    #[error("dataset `{0}` contains no cases")]
    EmptyDataset(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("corpus error: {0}")]
    Corpus(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("oracle refused dataset of {cases} cases (bound {bound})")]
    OracleBound { cases: usize, bound: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
