use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("block sizes {0:?} are not symmetric about the middle")]
    AsymmetricBlocks(Vec<usize>),

    #[error("middle block of size {size} has the wrong parity for type {family}")]
    MiddleParity { family: char, size: usize },

    #[error("block sizes sum to {sum}, expected {expected}")]
    BlockSum { sum: usize, expected: usize },

    #[error("{what} needs {needed} elements, limit is {limit}")]
    Guard {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("{0}")]
    Usage(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("check `{check}` failed: {detail}")]
    Falsified { check: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Validation and argument problems, as opposed to failures found by a check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::NotOddPrime(_)
                | Error::AsymmetricBlocks(_)
                | Error::MiddleParity { .. }
                | Error::BlockSum { .. }
                | Error::Usage(_)
                | Error::Guard { .. }
        )
    }
}
