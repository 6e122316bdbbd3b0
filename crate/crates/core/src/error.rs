use thiserror::Error;

/// Structural errors raised by stencil operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StencilError {
    #[error("index {index} out of range for dimension of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("index {0} appears more than once")]
    DuplicateIndex(usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("not a bijection on 0..{0}")]
    NotAPermutation(usize),
    #[error("stencil is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("side {side} exceeds the oracle limit of {limit}")]
    OracleLimit { side: usize, limit: usize },
    #[error("duplicate {axis} label {label:?}")]
    DuplicateLabel { axis: &'static str, label: Vec<u32> },
    #[error("{axis} labels have mixed arity ({expected} vs {found})")]
    LabelArity {
        axis: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("materialized size {entries} exceeds limit {limit}")]
    SizeLimit { entries: u128, limit: u128 },
    #[error("{0}")]
    Shape(String),
}

/// Errors from reading `.stn` grid files or labeled JSON documents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed header: expected `stencil <rows> <cols>`, found {0:?}")]
    MalformedHeader(String),
    #[error("line {line}: expected {expected} characters, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: illegal character {ch:?}")]
    IllegalCharacter { line: usize, column: usize, ch: char },
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {0}: unexpected content after the last row")]
    TrailingData(usize),
    #[error("star ({0}, {1}) out of range (indices are 1-based)")]
    StarOutOfRange(usize, usize),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Stencil(#[from] StencilError),
}
