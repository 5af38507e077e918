use thiserror::Error;

/// Errors raised by the max-times routines.
///
/// Variants split into two families: structural problems with the input
/// (shape, sign, parse failures) and mathematical rejections where the input
/// is well formed but the requested object does not exist.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix must have at least one row")]
    Empty,

    #[error("negative entry at ({row}, {col}); max-times entries must be nonnegative")]
    NegativeEntry { row: usize, col: usize },

    #[error("scaling entry {index} is not strictly positive; diag(x) must be invertible")]
    NonPositiveScaling { index: usize },

    #[error("λ(A) = 0: the digraph of A has no cycle, so A has no positive eigenvalue")]
    ZeroLambda,

    #[error("λ(A) = {lambda} > 1: the Kleene star series I ⊕ A ⊕ A² ⊕ … diverges")]
    LambdaExceedsOne { lambda: String },

    #[error("λ(A) = {lambda} ≠ 1: the matrix is not definite")]
    NotDefinite { lambda: String },

    #[error("matrix is not visualized: entry ({row}, {col}) exceeds λ(A)")]
    NotVisualized { row: usize, col: usize },

    #[error("matrix is reducible: its digraph is not strongly connected, so A* has zero entries")]
    ReducibleMatrix,

    #[error("power iteration did not reach tolerance {tolerance:e} within {iterations} iterations")]
    PowerIterationDivergence { iterations: usize, tolerance: f64 },

    #[error("every permutation has weight 0: the positivity pattern admits no perfect matching")]
    NoPositivePermutation,

    #[error("n = {n} exceeds the oracle limit {limit}")]
    OracleLimitExceeded { n: usize, limit: usize },

    #[error("{0} is only available for exact-rational matrices")]
    ExactModeRequired(&'static str),

    #[error("value is not representable exactly: {0}")]
    Unrepresentable(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    /// `true` for errors that reject a well-formed input on mathematical
    /// grounds, as opposed to malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroLambda
                | Error::LambdaExceedsOne { .. }
                | Error::NotDefinite { .. }
                | Error::NotVisualized { .. }
                | Error::ReducibleMatrix
                | Error::PowerIterationDivergence { .. }
                | Error::NoPositivePermutation
                | Error::Unrepresentable(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
