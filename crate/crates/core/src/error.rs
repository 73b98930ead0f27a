use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// The variants map onto three families that callers (notably the command
/// line front end) treat differently: capability limits, truncation of
/// series, and plain usage or validation mistakes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A configured size bound was exceeded.
    #[error("capability limit exceeded: {what} (degree {degree} > bound {bound})")]
    Capability {
        what: String,
        degree: usize,
        bound: usize,
    },

    /// A series does not carry enough known terms for the requested operation.
    #[error("series truncated too early: need known terms down to exponent {required}, have floor {available}")]
    Truncation { required: String, available: String },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("validation failed: {0}")]
    Validation(String),

    /// A mathematical precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certification failed: {0}")]
    Certification(String),
}

impl Error {
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability { .. })
    }

    /// Mistakes in the input rather than limits of the toolkit.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Usage(_) | Error::Validation(_))
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
