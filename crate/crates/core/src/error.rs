use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter or argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical routine could not reach its accuracy target within budget.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// The request is valid mathematically but deliberately not supported.
    #[error("unsupported regime: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure_domain {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err($crate::Error::Domain(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_domain;
