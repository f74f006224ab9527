use thiserror::Error;

/// Errors produced by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular curve (discriminant is zero)")]
    SingularCurve,

    /// The requested value lies outside the tabulated reduction data.
    #[error("not tabulated at p={p}: {reason}")]
    NotTabulated { p: u64, reason: String },

    #[error("unsupported prime {0}: only primes >= 5 are handled here")]
    UnsupportedPrime(u64),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("generators do not act transitively ({orbit} of {degree} points reached from 1)")]
    DisconnectedCover { orbit: usize, degree: usize },

    /// Two independent computations of the same quantity disagreed.
    #[error("consistency check failed: {0}")]
    TheoremViolation(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_not_tabulated(&self) -> bool {
        matches!(self, Error::NotTabulated { .. })
    }
}
