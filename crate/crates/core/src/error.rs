use thiserror::Error;

use crate::norms::NormKind;

/// Which side of the existence test failed when no Moore-Penrose inverse exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MpFailure {
    /// No hermitian idempotent has the null space of the operator as its null space.
    NullspaceNotRepresentable,
    /// No hermitian idempotent has the range of the operator as its range.
    RangeNotRepresentable,
}

impl std::fmt::Display for MpFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MpFailure::NullspaceNotRepresentable => f.write_str("NullspaceNotRepresentable"),
            MpFailure::RangeNotRepresentable => f.write_str("RangeNotRepresentable"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("entries length {len} does not match {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, len: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("subspace is not the range of any hermitian idempotent under {0:?}")]
    NotRepresentable(NormKind),

    #[error("b is not a generalized inverse of a (residual {0:e})")]
    NotGeneralizedInverse(f64),

    #[error("no Moore-Penrose inverse: {0}")]
    MpMissing(MpFailure),

    #[error("element is not EP (commutator norm {0:e})")]
    NotEp(f64),

    #[error("no group inverse: rank(a) = {rank}, rank(a^2) = {rank_sq}")]
    NoGroupInverse { rank: usize, rank_sq: usize },

    #[error("matrix does not conform to block structure {0:?}")]
    BlockMismatch(Vec<usize>),

    #[error("ideal is not proper")]
    NotProperIdeal,

    #[error("invalid block index {0}")]
    BadBlockIndex(usize),

    #[error("transport failed: conjugating matrix is not an isometry for {0:?}")]
    NonIsometric(NormKind),

    #[error("subspace is not invariant under the operator and its inverse")]
    NotInvariant,

    #[error("tolerance breakdown: {0}")]
    ToleranceBreakdown(String),

    #[error("unknown norm {0:?}")]
    UnknownNorm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
