use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("parse error: {0}")]
    Parse(#[from] crate::dsl::ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
