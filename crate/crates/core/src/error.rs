//! Error taxonomy shared by the library and the command line.

use thiserror::Error;

/// Every fallible operation in the crate reports one of these kinds.
///
/// The variants map one-to-one onto process exit codes, see [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input or a violated precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// The input is well formed but the mathematical object lacks the
    /// requested property (e.g. the algebra is not separable).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size limit was hit.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// An internal consistency assertion failed. Always a bug or a
    /// violated theorem-level invariant.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Domain(_) => 2,
            Error::Capacity(_) => 3,
            Error::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Domain(_) => "domain",
            Error::Capacity(_) => "capacity",
            Error::Internal(_) => "internal",
        }
    }

    pub fn not_separable(what: impl Into<String>) -> Self {
        Error::Domain(format!("NotSeparable: {}", what.into()))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
macro_rules! internal {
    ($($arg:tt)*) => { $crate::error::Error::Internal(format!($($arg)*)) };
}
macro_rules! capacity {
    ($($arg:tt)*) => { $crate::error::Error::Capacity(format!($($arg)*)) };
}
macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use {capacity, domain, internal, usage};
