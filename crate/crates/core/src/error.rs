use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotAUnit(u32),
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    #[error("element does not belong to this ring context")]
    CtxMismatch,
    #[error("target ring is not a one-step quotient of the source ring")]
    NotAQuotient,
    #[error("input too large for exhaustive computation: {0}")]
    TooLarge(String),
    #[error("extension is not minimal")]
    NotMinimal,
    #[error("parameter a = {0} is outside the family (need a >= 6)")]
    OutOfFamily(u32),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
