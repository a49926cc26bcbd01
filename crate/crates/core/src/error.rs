use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0} is not a limit ordinal")]
    NotLimit(String),
    #[error("ceiling exceeded: {0}")]
    Ceiling(String),
    #[error("sets are not successive: {0}")]
    NotSuccessive(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid certificate at {path}: {reason}")]
    Certificate { path: String, reason: String },
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}
