//! Exact quotient matrices of invariant colorings.
//!
//! For an invariant coloring with basis matrix `D`, the induced map on the
//! subspace has the matrix `Q = D⁺ M D` in the basis coordinates, where
//! the pseudoinverse `D⁺ = (DᵀD)⁻¹Dᵀ` is cheap because `DᵀD` is diagonal.
//! `Q` is the weighted adjacency matrix of the quotient digraph on colors;
//! enumerating its invariant colorings yields exactly the invariant
//! subspaces nested inside the original one.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::basis::BasisMatrix;
use crate::coloring::ColoringVector;
use crate::error::{Error, Result};
use crate::matrix::{IntegerMatrix, RationalMatrix};
use crate::solver::{enumerate, EnumerationMode, SolveConfig};
use crate::{Int, Rational};

/// `D⁺ = (DᵀD)⁻¹Dᵀ` of a basis matrix, a `d x n` rational matrix with
/// `D⁺ D` the identity. `DᵀD` is verified diagonal with positive entries.
pub fn pseudoinverse(basis: &BasisMatrix) -> Result<RationalMatrix> {
    let n = basis.n();
    let d = basis.dim();
    let mut diagonal = vec![0 as Int; d];
    for k in 0..d {
        for l in 0..d {
            let dot: Int = (0..n).map(|i| basis.get(i, k) * basis.get(i, l)).sum();
            if k == l {
                diagonal[k] = dot;
            } else if dot != 0 {
                return Err(Error::InvalidBasis(format!(
                    "columns {k} and {l} are not orthogonal"
                )));
            }
        }
        if diagonal[k] <= 0 {
            return Err(Error::InvalidBasis(format!("column {k} is zero")));
        }
    }
    let mut out = RationalMatrix::zeros(d, n);
    for k in 0..d {
        for i in 0..n {
            let e = basis.get(i, k);
            if e != 0 {
                out.set(k, i, Rational::new(e, diagonal[k]));
            }
        }
    }
    Ok(out)
}

/// The quotient matrix `D⁺ M D` of an invariant coloring, with the
/// intertwining identity `M D = D Q` verified exactly.
pub fn quotient_matrix(m: &IntegerMatrix, c: &ColoringVector) -> Result<RationalMatrix> {
    if !m.is_invariant(c)? {
        return Err(Error::NotInvariant);
    }
    let basis = c.basis();
    let d = basis.dim();
    let n = basis.n();
    let pinv = pseudoinverse(&basis)?;
    // Integer product M D, column by column.
    let mut image = RationalMatrix::zeros(n, d);
    for k in 0..d {
        let column = m.mul_vector(&basis.column(k))?;
        for i in 0..n {
            image.set(i, k, Rational::from(column[i]));
        }
    }
    let quotient = pinv.mul(&image)?;
    // Invariance makes every column of M D a combination of basis columns,
    // so the projection is exact.
    let mut lift = RationalMatrix::zeros(n, d);
    for i in 0..n {
        for k in 0..d {
            let mut acc = Rational::zero();
            for l in 0..d {
                acc += Rational::from(basis.get(i, l)) * quotient.get(l, k);
            }
            lift.set(i, k, acc);
        }
    }
    assert_eq!(lift, image, "intertwining identity M D = D Q failed");
    Ok(quotient)
}

/// Invariant colorings of the quotient matrix, i.e. the invariant
/// subspaces nested inside the subspace of `c`, expressed in the quotient
/// coordinates. A rational quotient is scaled integer by the denominator
/// lcm first; the invariant family is unchanged by scaling.
pub fn nested_invariants(
    m: &IntegerMatrix,
    c: &ColoringVector,
) -> Result<BTreeSet<ColoringVector>> {
    let quotient = quotient_matrix(m, c)?;
    let (scaled, _factor) = quotient.clear_denominators()?;
    Ok(enumerate(&scaled, EnumerationMode::Polydiagonal, &SolveConfig::default())?.collect())
}
