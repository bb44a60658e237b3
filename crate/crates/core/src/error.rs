use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// In/out edge lists disagree with edge endpoints, or ids are malformed.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("limit exceeded: more than {limit} {what}")]
    LimitExceeded { what: &'static str, limit: usize },

    /// A property guaranteed by the theory failed to hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invariant {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::InternalInvariantViolated(format!($($arg)+)));
        }
    };
}

macro_rules! invalid {
    ($($arg:tt)+) => {
        $crate::error::Error::InvalidInput(format!($($arg)+))
    };
}

pub(crate) use invalid;
pub(crate) use invariant;
