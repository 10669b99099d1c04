use std::path::{Path, PathBuf};
use std::process::ExitCode;

use knfaces_core::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    /// 1 for failed verification, 2 for bad input, 3 for the precision ceiling.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Failed(_) => 1,
            CliError::Core(Error::Certificate(_) | Error::Invariant(_)) => 1,
            CliError::Core(Error::PrecisionCeiling { .. }) => 3,
            CliError::Core(_) | CliError::Io { .. } | CliError::Usage(_) => 2,
        })
    }
}
