use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {dim} exceeds the truncation bound {max}")]
    DimensionOverflow { dim: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is 0-dimensional and has no boundary")]
    NoBoundary(String),
    #[error("not parallel: {0}")]
    NotParallel(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("scheme {0} is not a one-column suspension")]
    NotSuspended(String),
    #[error("no lift at dimension {dim} for pair {pair} over {target}")]
    NoLift { dim: usize, pair: String, target: String },
    #[error("missing table entry: {0}")]
    MissingTableEntry(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("cell {0} has no inverse")]
    NoInverse(String),
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}
