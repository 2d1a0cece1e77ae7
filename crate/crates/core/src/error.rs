use thiserror::Error;

/// Errors produced by the algebraic-restriction toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("variable sets differ")]
    VarSetMismatch,

    #[error("form degree {0} exceeds the tracked maximum {1}")]
    DegreeOverflow(usize, usize),

    #[error("interior product of a 0-form")]
    InteriorOfFunction,

    #[error("form is not closed")]
    NotClosed,

    #[error("index {0} out of range for {1} variables")]
    IndexOutOfRange(usize, usize),

    #[error("invalid germ: {0}")]
    InvalidGerm(String),

    #[error("degenerate jets: {0}")]
    DegenerateFrame(String),

    #[error("restriction space did not stabilize before degree {0}")]
    NoStabilization(i64),

    #[error("form of quasi-degree {0} lies beyond the computed range")]
    BeyondCap(i64),

    #[error("vector field is not tangent to the germ")]
    NotTangent,

    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    #[error("order search exceeded cap {0}")]
    CapExceeded(i64),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("no table row matches {0}")]
    NoMatch(String),

    #[error("ambiguous classification, candidates: {0}")]
    Ambiguous(String),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
