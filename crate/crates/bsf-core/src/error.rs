use thiserror::Error;

/// Failure modes shared by every layer of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("Groebner budget exhausted after {0} pairs")]
    Budget(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A mathematical precondition failed; the tag is stable and machine readable.
    #[error("{tag}: {detail}")]
    Math { tag: &'static str, detail: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn math(tag: &'static str, detail: impl Into<String>) -> Self {
        Error::Math { tag, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
