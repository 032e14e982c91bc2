use thiserror::Error;

use crate::green::MutationSequence;

/// Errors raised by matrix, seed and certifier operations.
///
/// Vertex indices stored in errors are 0-based; `Display` renders them
/// 1-based so diagnostics match the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix must have at least one vertex")]
    Empty,

    #[error("not skew-symmetrizable: {reason}")]
    NotSkewSymmetrizable { reason: String },

    #[error("integer overflow in {context}")]
    Overflow { context: &'static str },

    #[error("vertex {} out of range for n = {n}", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("canonical form limited to n <= {limit}, got n = {n}")]
    SizeLimitExceeded { n: usize, limit: usize },

    #[error("c-vector {} is not sign-coherent after path [{path}]", .vertex + 1)]
    SignCoherenceViolation { vertex: usize, path: MutationSequence },

    #[error("c-vectors do not form a basis (det = {det}) after path [{path}]")]
    NotUnimodular { det: i64, path: MutationSequence },

    #[error("vertex {} is not green at step {step}", .vertex + 1)]
    NotGreenAtStep { step: usize, vertex: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("matrix is not in the X7 mutation class")]
    NotInClass,

    #[error("unknown catalog quiver `{0}`")]
    UnknownName(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn overflow(context: &'static str) -> Error {
    Error::Overflow { context }
}
