use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("resource guard exceeded: {what} (limit {limit})")]
    Guard { what: String, limit: u64 },

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("truncation not stable: {0}")]
    NotStable(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Guard violations are reported separately by the command-line driver.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }

    pub(crate) fn guard(what: impl Into<String>, limit: u64) -> Self {
        Error::Guard { what: what.into(), limit }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
