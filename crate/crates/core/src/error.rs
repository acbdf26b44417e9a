use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at {location}: {msg}")]
    Parse { location: String, msg: String },

    /// A desk-scale guardrail was exceeded (rank degree, vertex count, case cap).
    #[error("resource limit: {0}")]
    Resource(String),

    /// A search that a correct divisor theory guarantees to succeed came back empty.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            msg: msg.into(),
        }
    }
}
