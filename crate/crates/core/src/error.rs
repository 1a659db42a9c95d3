use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("deferred-write budget must be at least 2, got {0}")]
    Budget(usize),
    #[error("stream already flushed")]
    AlreadyFlushed,
    #[error("invalid {kind} array at position {pos}: {reason}")]
    InvalidArray {
        kind: &'static str,
        pos: usize,
        reason: &'static str,
    },
    #[error("factor {index}: {reason}")]
    Decode { index: usize, reason: String },
    #[error("oracle input length {len} exceeds cap {cap}")]
    OracleCap { len: usize, cap: usize },
}
