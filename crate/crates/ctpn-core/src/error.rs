//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration or incompatible shapes, with the offending values named.
    #[error("configuration error: {0}")]
    Config(String),

    /// Invalid runtime input (bad geometry, malformed annotation, out-of-range value).
    #[error("input error: {0}")]
    Input(String),

    /// Malformed file contents (bad magic, truncated payload, schema mismatch).
    #[error("format error: {0}")]
    Format(String),

    /// Non-finite value produced where the math requires finite numbers.
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
