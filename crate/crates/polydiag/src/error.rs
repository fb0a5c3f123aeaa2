//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input vector is empty")]
    EmptyVector,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix must be square with at least one row, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not a valid coloring vector: {0}")]
    InvalidColoring(String),

    #[error("invalid tagged partition: {0}")]
    InvalidPartition(String),

    #[error("invalid basis matrix: {0}")]
    InvalidBasis(String),

    #[error(
        "integer overflow while {context}; rebuild with `--features wide` for 128-bit arithmetic"
    )]
    Overflow { context: String },

    #[error("coloring vector is not invariant under the matrix")]
    NotInvariant,

    #[error("brute-force oracle refused: n = {n} exceeds the cap of {cap}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("group closure exceeded the cap of {cap} elements")]
    GroupCapExceeded { cap: usize },

    #[error(
        "graph has {n} vertices, above the built-in automorphism search cap of {cap}; \
         supply group generators from a file instead"
    )]
    AutomorphismCapExceeded { n: usize, cap: usize },

    #[error("matrix is not a symmetric 0/1 adjacency matrix with zero diagonal")]
    NotAdjacency,

    #[error("family is not closed under the group action: {coloring} maps to {image}, which is missing")]
    FamilyNotClosed { coloring: String, image: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

impl Error {
    pub(crate) fn overflow(context: &str) -> Self {
        Error::Overflow {
            context: context.to_string(),
        }
    }
}
