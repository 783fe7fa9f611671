use std::io;
use std::path::PathBuf;

use hsig_core::Error as CoreError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    /// Success, or the checked identity holds.
    Holds = 0,
    /// The checked identity fails.
    Fails = 1,
    /// Malformed input or usage.
    Malformed = 2,
    /// Dimensions or grids do not match.
    Mismatch = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("invalid {what}: {message}")]
    Literal { what: &'static str, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        CliError::Format { path: path.into(), message: message.into() }
    }

    pub fn literal(what: &'static str, message: impl ToString) -> Self {
        CliError::Literal { what, message: message.to_string() }
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Core(
                CoreError::DimensionMismatch { .. }
                | CoreError::GridMismatch
                | CoreError::AxisOutOfRange { .. }
                | CoreError::LengthMismatch { .. },
            ) => ExitStatus::Mismatch,
            _ => ExitStatus::Malformed,
        }
    }
}
