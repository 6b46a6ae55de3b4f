use thiserror::Error;

use crate::series::ParitySupport;

/// Errors raised by the exact-arithmetic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is not invertible: constant coefficient is zero")]
    NotInvertible,

    #[error("k = {k} has the wrong parity: this construction needs {expected:?} k")]
    Parity { k: u32, expected: ParitySupport },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
