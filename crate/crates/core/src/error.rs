use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that cannot be represented (empty period, bad transposition, overflow).
    #[error("representation error: {0}")]
    Representation(String),

    /// Text that failed to parse; the offending token is included.
    #[error("parse error at `{token}`: {msg}")]
    Parse { token: String, msg: String },

    /// A precondition of a construction does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed scenario or structure file.
    #[error("configuration error at {location}: {msg}")]
    Config { location: String, msg: String },
}

impl Error {
    pub fn parse(token: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            msg: msg.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn repr(msg: impl Into<String>) -> Self {
        Error::Representation(msg.into())
    }

    pub fn config(location: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            location: location.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
