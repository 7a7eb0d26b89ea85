use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("array file: {0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] arraydir_core::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("validation failed: {failed} of {total} case(s) above tolerance")]
    ValidationFailed { failed: usize, total: usize },
}

impl AppError {
    /// 1 for bad arguments or unreadable input, 2 for computation, output or validation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Input { .. } | AppError::Json { .. } | AppError::Format(_) | AppError::Usage(_) => 1,
            AppError::Io { .. } | AppError::Compute(_) | AppError::Csv(_) | AppError::ValidationFailed { .. } => 2,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
