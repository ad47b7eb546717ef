use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use resilience_core::behavior::BehaviorError;
use resilience_core::channel::ChannelError;
use resilience_core::fitness::FitnessError;
use resilience_core::sentinel::SentinelError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(2),
            CliError::Io { .. } => ExitCode::from(3),
            CliError::Invariant(_) => ExitCode::from(4),
        }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// A JSON parse failure; serde's message carries line and column.
    pub fn parse(path: &Path, err: serde_json::Error) -> Self {
        CliError::Config(format!("{}: {err}", path.display()))
    }
}

/// Routes a library error to the exit-code family it belongs to, attributing
/// I/O failures to `path`.
pub trait Classify<T> {
    fn classify(self, path: &Path) -> Result<T, CliError>;
}

impl<T> Classify<T> for Result<T, ChannelError> {
    fn classify(self, path: &Path) -> Result<T, CliError> {
        self.map_err(|e| match e {
            ChannelError::InvalidBounds(_)
            | ChannelError::InvalidConfig(_)
            | ChannelError::StoreCorrupt(_) => CliError::Config(format!("{}: {e}", path.display())),
            ChannelError::Io(source) => CliError::io(path, source),
            ChannelError::Csv(c) => csv_error(path, c),
            other => CliError::Invariant(other.to_string()),
        })
    }
}

impl<T> Classify<T> for Result<T, SentinelError> {
    fn classify(self, path: &Path) -> Result<T, CliError> {
        self.map_err(|e| match e {
            SentinelError::Structure(_)
            | SentinelError::InvalidParameter(_)
            | SentinelError::EmptyPool => CliError::Config(format!("{}: {e}", path.display())),
            SentinelError::Io(source) => CliError::io(path, source),
            SentinelError::Csv(c) => csv_error(path, c),
            SentinelError::Behavior(b) => CliError::Invariant(b.to_string()),
        })
    }
}

impl<T> Classify<T> for Result<T, BehaviorError> {
    fn classify(self, path: &Path) -> Result<T, CliError> {
        self.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

impl<T> Classify<T> for Result<T, FitnessError> {
    fn classify(self, path: &Path) -> Result<T, CliError> {
        self.map_err(|e| match e {
            FitnessError::InvalidVariant(_) | FitnessError::Behavior(_) => {
                CliError::Config(format!("{}: {e}", path.display()))
            }
            FitnessError::Io(source) => CliError::io(path, source),
            FitnessError::Csv(c) => csv_error(path, c),
            other => CliError::Invariant(other.to_string()),
        })
    }
}

fn csv_error(path: &Path, err: csv::Error) -> CliError {
    if err.is_io_error() {
        match err.into_kind() {
            csv::ErrorKind::Io(source) => CliError::io(path, source),
            _ => unreachable!("checked to be an i/o error"),
        }
    } else {
        CliError::Invariant(err.to_string())
    }
}
