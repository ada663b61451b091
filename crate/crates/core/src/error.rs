use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the region where the operation is defined or implemented.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numeric evaluation could not be carried out (e.g. negative radicand).
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// Two independent routes to the same quantity disagreed beyond tolerance.
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
