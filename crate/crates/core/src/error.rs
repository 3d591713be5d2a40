use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),
    #[error("method inapplicable: {0}")]
    MethodInapplicable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("accuracy error: {message} (tail estimate {tail:e})")]
    Accuracy { message: String, tail: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
