use thiserror::Error;

use crate::poly::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization pole")]
    SpecializationPole,
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
    #[error("adams operation needs n >= 1, got {0}")]
    AdamsIndex(i64),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("pole: {0}")]
    Pole(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("window too small: need d_max >= {needed}")]
    WindowTooSmall { needed: i64 },
    #[error("enumeration of {needed} elements exceeds cap {cap}")]
    EnumerationCap { needed: u128, cap: u128 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
