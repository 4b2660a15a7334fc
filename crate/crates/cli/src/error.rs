use std::path::PathBuf;

use bruhat_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed coefficient file {path}: {reason}")]
    BadFile { path: PathBuf, reason: String },
    #[error("{0} exists; pass --force to overwrite")]
    Exists(PathBuf),
}

impl CliError {
    /// 0 success, 1 usage, 2 budget, 3 fit failure, 4 verification mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::BudgetExceeded { .. } | CoreError::EnumerationRefused(_) => 2,
                CoreError::FitFailedVerification { .. } => 3,
                CoreError::FormulaInconsistent(_)
                | CoreError::RadicalInconsistency(_)
                | CoreError::Internal(_) => 4,
                _ => 1,
            },
            CliError::Io { .. } => 1,
            CliError::Usage(_) | CliError::BadFile { .. } | CliError::Exists(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "budget",
            3 => "fit",
            4 => "mismatch",
            _ => "usage",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
