//! Exact enumeration and analysis of polydiagonal subspaces invariant under
//! an integer matrix.
//!
//! A polydiagonal subspace of ℝⁿ is cut out by equality constraints
//! (`x_i = x_j`, synchrony) and negation constraints (`x_i = -x_j`,
//! anti-synchrony) between coordinates. Each such subspace is encoded by a
//! canonical integer [`ColoringVector`]; equal entries mean equal
//! coordinates, opposite entries mean opposite coordinates, and a zero entry
//! pins the coordinate to zero.
//!
//! The crate provides:
//!
//! - [`coloring`], [`partition`], [`basis`], [`matrix`]: the exact domain
//!   types (coloring vectors, tagged partitions, signed basis matrices,
//!   checked integer/rational matrices) and their predicates;
//! - [`solver`]: a streaming depth-first search with constraint propagation
//!   that enumerates every coloring vector whose subspace is invariant under
//!   a given integer matrix;
//! - [`ciralg`]: the split-and-cir baseline for invariant synchrony
//!   subspaces, used for cross-validation;
//! - [`lattice`]: Hasse diagrams of enumerated families under the reverse
//!   inclusion order, with DOT output;
//! - [`symmetry`]: signed vertex symmetries, orbits, point stabilizers,
//!   fixed subspaces, and anomalous-invariant-subspace classification;
//! - [`quotient`]: exact rational quotient matrices of invariant colorings.
//!
//! All integer arithmetic is overflow-checked: an overflow surfaces as
//! [`Error::Overflow`] rather than wrapping. The `wide` cargo feature
//! switches the scalar type from `i64` to `i128`.

pub mod basis;
pub mod ciralg;
pub mod coloring;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod partition;
pub mod quotient;
pub mod solver;
pub mod symmetry;

/// Scalar used for all exact integer data (matrix entries, coloring
/// entries, accumulated sums). `i64` by default, `i128` with the `wide`
/// feature.
#[cfg(not(feature = "wide"))]
pub type Int = i64;
#[cfg(feature = "wide")]
pub type Int = i128;

/// Exact rational scalar built on [`Int`].
pub type Rational = num_rational::Ratio<Int>;

pub use basis::BasisMatrix;
pub use coloring::{
    leq_extended, signed_delta, validate_coloring, validate_coloring_alt, ColoringVector,
};
pub use error::{Error, Result};
pub use lattice::{build_poset, DotOptions, HasseDiagram};
pub use matrix::{IntegerMatrix, RationalMatrix};
pub use partition::TaggedPartition;
pub use solver::{
    brute_force_invariant, count, enumerate, enumerate_colorings, EnumerationMode, SolveConfig,
};
pub use symmetry::{SignedSymmetry, SymmetryGroup};

pub(crate) fn checked_add(a: Int, b: Int, context: &str) -> Result<Int> {
    a.checked_add(b).ok_or_else(|| Error::overflow(context))
}

pub(crate) fn checked_mul(a: Int, b: Int, context: &str) -> Result<Int> {
    a.checked_mul(b).ok_or_else(|| Error::overflow(context))
}
