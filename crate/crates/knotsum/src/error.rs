use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants are grouped loosely by the layer that produces them; the CLI maps
/// them onto exit codes (input errors versus semantic failures).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("field mismatch in {op}")]
    FieldMismatch { op: &'static str },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("type mismatch in {op}: expected {expected}, found {found}")]
    TypeMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {text:?}: {reason}")]
    ScalarParse { text: String, reason: String },
    #[error("singular: {0}")]
    Singular(String),
    #[error("invalid duality: {0}")]
    InvalidDuality(String),
    #[error("invalid R-matrix: {0}")]
    InvalidRMatrix(String),
    #[error("invalid T-matrix: {0}")]
    InvalidTMatrix(String),
    #[error("invalid Hopf data: {0}")]
    InvalidHopf(String),
    #[error("tangle parse error at line {line}, position {position}: {reason}")]
    TangleParse {
        line: usize,
        position: usize,
        reason: String,
    },
    #[error("invalid tangle: {0}")]
    InvalidTangle(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unsupported framing parameter: {0}")]
    UnsupportedFraming(String),
    #[error("state sum cross-check failed: {0}")]
    CrossCheck(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
