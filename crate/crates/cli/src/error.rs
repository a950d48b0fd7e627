use std::io;
use std::path::PathBuf;

use serde::Serialize;

/// Process exit status for a failed run caused by bad input.
pub const EXIT_VALIDATION: i32 = 2;
/// Process exit status for valid input whose mathematics has no solution.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] pseudospin_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn missing(key: &str, command: &str) -> Self {
        CliError::Validation(format!("scenario key `{key}` is required for `{command}`"))
    }

    pub fn is_numerical(&self) -> bool {
        matches!(self, CliError::Core(e) if e.is_numerical())
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_VALIDATION
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Parse { .. } => "Parse",
            CliError::Validation(_) => "Validation",
            CliError::Core(e) => e.code(),
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord {
            status: "error",
            code: self.code(),
            category: if self.is_numerical() { "numerical" } else { "validation" },
            exit_code: self.exit_code(),
            message: self.to_string(),
        }
    }
}

/// Machine-readable failure written as `error.json`.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub status: &'static str,
    pub code: &'static str,
    pub category: &'static str,
    pub exit_code: i32,
    pub message: String,
}

pub type Result<T> = std::result::Result<T, CliError>;
