use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Error)]
pub enum Error {
    /// A size guard was exceeded (ground set, brute-force enumeration, exact dense storage).
    #[error("capacity exceeded for {what}: limit {limit}, got {got}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The inputs are well formed but fall outside what the closed form covers.
    #[error("unsupported case: {0}")]
    Unsupported(String),
    /// A matrix did not have the structure the operation relies on.
    #[error("structure error: {0}")]
    Structure(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}

pub(crate) fn capacity(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        Err(Error::Capacity { what, limit, got })
    } else {
        Ok(())
    }
}
