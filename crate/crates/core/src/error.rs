use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("generator index {0} is not in the source algebra")]
    UnknownGenerator(usize),

    #[error("element of degree {degree} exceeds truncation degree {limit}")]
    DegreeOverflow { degree: usize, limit: usize },

    #[error("truncation degree {got} is too small; need at least {needed}")]
    TruncationTooSmall { needed: usize, got: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("relation {0} is not homogeneous for the supplied grading")]
    Inhomogeneous(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("input is not a certified coinvariant")]
    NotCoinvariant,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    /// A mathematically impossible outcome; signals an implementation bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
