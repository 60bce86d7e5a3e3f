use std::fmt;

/// Where in an input a parse error was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    Byte(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(n) => write!(f, "line {n}"),
            Location::Byte(n) => write!(f, "byte offset {n}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Several configuration problems found at once.
    #[error("invalid configuration:\n  - {}", .0.join("\n  - "))]
    InvalidConfigs(Vec<String>),

    #[error("type mismatch: {0}")]
    Type(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("parse error at {at}: {msg}")]
    Parse { at: Location, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    pub(crate) fn type_mismatch(msg: impl Into<String>) -> Self {
        Error::Type(msg.into())
    }

    pub(crate) fn parse_line(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            at: Location::Line(line),
            msg: msg.into(),
        }
    }

    pub(crate) fn parse_byte(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            at: Location::Byte(offset),
            msg: msg.into(),
        }
    }

    /// Whether this is a configuration error (CLI exit code 2).
    pub fn is_config(&self) -> bool {
        matches!(self, Error::InvalidConfig(_) | Error::InvalidConfigs(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
