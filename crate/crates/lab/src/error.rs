use std::path::PathBuf;

use thiserror::Error;

use crate::oracle::OracleError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("numerical failure at lambda = {lambda:?} MHz: {reason}")]
    Numerical { lambda: f64, reason: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("golden file {path}: {reason}")]
    Golden { path: PathBuf, reason: String },
    #[error("{0} must be positive and finite")]
    NonPositiveInput(&'static str),
    #[error("validation failed: {0}")]
    Validation(String),
}

impl LabError {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) | LabError::Read { .. } | LabError::Parse { .. } | LabError::Golden { .. } => 1,
            LabError::Io(_) | LabError::Csv(_) | LabError::NonPositiveInput(_) => 1,
            LabError::Numerical { .. } | LabError::Oracle(_) => 2,
            LabError::Validation(_) => 3,
        }
    }
}
