use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] paretocheck_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("column {0} not found")]
    MissingColumn(String),
    #[error("non-numeric value {value:?} in column {column} at line {line}")]
    NonNumeric {
        column: String,
        line: u64,
        value: String,
    },
    #[error("cannot render series {series:?}: {reason}")]
    Render { series: String, reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub const EXIT_DATA: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

impl Error {
    /// 3 for problems with flags or model parameters, 2 for everything the
    /// input data is responsible for.
    pub fn exit_code(&self) -> i32 {
        use paretocheck_core::Error as E;
        match self {
            Error::Config(_) | Error::MissingColumn(_) => EXIT_CONFIG,
            Error::Core(E::InvalidParameter { .. })
            | Error::Core(E::ProbabilityOutOfRange(_))
            | Error::Core(E::Unsupported(_)) => EXIT_CONFIG,
            _ => EXIT_DATA,
        }
    }
}
