use std::fmt;
use std::io;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::Location;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate type `{name}`: declared at {first} and {second}")]
    DuplicateType {
        name: String,
        first: Location,
        second: Location,
    },
    #[error("duplicate namespace `{0}`")]
    DuplicateNamespace(String),
    #[error("`{from}` references `{to}`, which is not in the model")]
    DanglingReference { from: String, to: String },
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read threshold file {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed threshold file {path}: {message}")]
    Syntax { path: PathBuf, message: String },
    #[error("invalid thresholds in {path}: {}", .keys.join(", "))]
    InvalidKeys { path: PathBuf, keys: Vec<String> },
    #[error("unknown column `{column}` for context `{context}`")]
    UnknownColumn { context: String, column: String },
    #[error("invalid sort specification `{0}`")]
    SortSpec(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("source root {0} does not exist or is not a directory")]
    MissingRoot(PathBuf),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A non-fatal problem found during analysis, printed as `path:line: message`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagnostic {
    pub file: String,
    pub line: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn new(file: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Self {
            file: file.into(),
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.file, self.line, self.message)
    }
}
