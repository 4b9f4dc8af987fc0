use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A computation would exceed a configured size limit.
    #[error("resource cap exceeded: {what} would exceed {cap}")]
    ResourceCap { what: String, cap: u64 },

    /// An operation was called outside its documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed. This indicates a bug or a
    /// counterexample to one of the structural statements the library encodes.
    #[error("contract violated: {0}")]
    Contract(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn cap(what: impl Into<String>, cap: u64) -> Self {
        Error::ResourceCap {
            what: what.into(),
            cap,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
