use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A requested table would exceed the configured entry cap.
    #[error("resource limit: {requested} entries requested, cap is {cap}")]
    Resource { requested: u128, cap: u128 },

    /// An internal invariant was violated. Always a bug.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
