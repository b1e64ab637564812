use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields")]
    ContextMismatch,
    #[error("invalid quadratic discriminant {0}")]
    BadDiscriminant(i64),
    #[error("operation needs a quadratic field")]
    NotQuadratic,
    #[error("operation needs a parametric field")]
    NotParametric,
    #[error("lines are equal")]
    EqualLines,
    #[error("points are equal")]
    EqualPoints,
    #[error("zero coefficient vector")]
    ZeroVector,
    #[error("duplicate line {0}")]
    DuplicateLine(usize),
    #[error("line index {0} out of range")]
    InvalidIndex(usize),
    #[error("arrangement is not free")]
    NotFree,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not drawable: {0}")]
    NotDrawable(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("{0}")]
    Invalid(String),
}
