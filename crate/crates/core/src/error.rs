use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group specification: {0}")]
    Spec(String),
    #[error("group enumeration exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("interval refused: {0}")]
    Refused(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
