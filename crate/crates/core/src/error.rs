use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
  #[error("invalid input: {0}")]
  InvalidInput(String),
  #[error("invalid complex: {0}")]
  InvalidComplex(String),
  #[error("invalid sheaf: {0}")]
  InvalidSheaf(String),
  #[error("unsupported: {0}")]
  Unsupported(String),
  #[error("refused: {0}")]
  Refused(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
