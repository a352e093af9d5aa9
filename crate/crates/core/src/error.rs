use thiserror::Error;

use crate::lang::ParseError;
use crate::ratlp::LpError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("unsupported reduction: {0}")]
    UnsupportedReduction(String),

    #[error("inner sup not exact: {0}")]
    InnerSupNotExact(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("measure has empty support")]
    EmptySupport,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("empty set family")]
    EmptyFamily,

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("index undefined for the empty set")]
    UndefinedIndex,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Lp(#[from] LpError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
