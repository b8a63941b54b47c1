use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse field literal {literal:?}: {reason}")]
    Literal { literal: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown builtin category {0:?}")]
    UnknownBuiltin(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown coupon {0:?}")]
    UnknownCoupon(String),
    #[error("unknown diagram {0:?}")]
    UnknownDiagram(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("typecheck error in row {row}: {msg}")]
    Typecheck { row: usize, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not an endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("{0} is not simple (End has rank {1})")]
    NotSimple(String, usize),
    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0} is outside the domain of the trace family")]
    NotInDomain(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
