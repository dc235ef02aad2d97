use thiserror::Error;

/// Errors raised by the library. CLI exit codes are derived from the variant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation is undefined on the empty graph")]
    EmptyGraph,
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("capacity exceeded: {what} is {got}, supported maximum is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("generation failed: {0}")]
    Generation(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
