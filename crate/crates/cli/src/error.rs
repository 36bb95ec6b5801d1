use std::path::PathBuf;

use suilab_core::dsl::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{}:{}: {err}", path.display(), err.span.line, err.span.column)]
    Parse { path: PathBuf, err: ParseError },
    #[error("{}: {msg}", path.display())]
    Config { path: PathBuf, msg: String },
    #[error(transparent)]
    Core(#[from] suilab_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub(crate) fn stdout(source: std::io::Error) -> CliError {
        CliError::Io { path: "<stdout>".into(), source }
    }
}

pub type CliResult<T> = Result<T, CliError>;
