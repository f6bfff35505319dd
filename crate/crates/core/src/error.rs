//! Crate-wide error type.

use std::fmt;

/// Errors produced by gapstat operations.
#[derive(Debug)]
pub enum Error {
    /// An argument violated a documented precondition.
    Domain(String),
    /// Input data is structurally invalid (unsorted, too short, wrong unit, ...).
    Data(String),
    /// A file could not be parsed; carries the 1-based line number when known.
    Parse { line: Option<usize>, message: String },
    /// A numerical routine could not reach the requested tolerance.
    /// Carries the best available estimate and its error bound.
    Accuracy { estimate: f64, error_estimate: f64 },
    /// An iterative computation failed to converge.
    Computation(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Data(msg) => write!(f, "data error: {msg}"),
            Error::Parse { line: Some(n), message } => write!(f, "parse error at line {n}: {message}"),
            Error::Parse { line: None, message } => write!(f, "parse error: {message}"),
            Error::Accuracy { estimate, error_estimate } => write!(
                f,
                "accuracy error: tolerance not reached (best estimate {estimate:e}, error bound {error_estimate:e})"
            ),
            Error::Computation(msg) => write!(f, "computation error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn data(msg: impl Into<String>) -> Error {
    Error::Data(msg.into())
}
