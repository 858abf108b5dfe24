use std::fmt;

/// Crate-wide error type. The CLI maps variants onto exit codes:
/// `Parse`/`Usage` -> 2, `Resource` -> 3, everything else -> 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text; carries a 1-based line number where known.
    Parse { line: usize, msg: String },
    /// A structural invariant of a type does not hold; `name` is a stable
    /// kebab-case identifier like "ring-not-a-face".
    Validation { name: String, msg: String },
    /// An operation was called outside its precondition.
    Precondition { name: String, msg: String },
    /// A configured enumeration budget was exceeded.
    Resource { msg: String },
    /// Bad command line.
    Usage { msg: String },
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
    pub fn validation(name: &str, msg: impl Into<String>) -> Self {
        Error::Validation { name: name.to_string(), msg: msg.into() }
    }
    pub fn precondition(name: &str, msg: impl Into<String>) -> Self {
        Error::Precondition { name: name.to_string(), msg: msg.into() }
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource { msg: msg.into() }
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage { msg: msg.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Validation { name, msg } => write!(f, "validation error [{name}]: {msg}"),
            Error::Precondition { name, msg } => write!(f, "precondition failed [{name}]: {msg}"),
            Error::Resource { msg } => write!(f, "resource budget exceeded: {msg}"),
            Error::Usage { msg } => write!(f, "usage error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
