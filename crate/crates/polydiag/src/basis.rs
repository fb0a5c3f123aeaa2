//! Signed basis matrices of polydiagonal subspaces.
//!
//! The basis matrix of a coloring vector has one column per nonzero color
//! `k`, holding `+1` at positions colored `k`, `-1` at positions colored
//! `-k`, and `0` elsewhere. Every row has at most one nonzero entry and the
//! transpose is in reduced row-echelon form. The coloring vector is
//! recovered as the product of the matrix with `(1, 2, .., d)`.

use crate::coloring::{signed_delta, validate_coloring, ColoringVector};
use crate::error::{Error, Result};
use crate::Int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMatrix {
    n: usize,
    d: usize,
    /// Row-major `n x d` entries over `{-1, 0, 1}`.
    entries: Vec<Int>,
}

impl BasisMatrix {
    /// Builds a basis matrix from row-major entries, checking all
    /// invariants: entries in `{-1,0,1}`, at most one nonzero per row, no
    /// zero column, and the transpose in reduced row-echelon form (each
    /// column's first nonzero is `+1`, at strictly increasing positions).
    pub fn new(n: usize, d: usize, entries: Vec<Int>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBasis("n must be at least 1".into()));
        }
        if entries.len() != n * d {
            return Err(Error::InvalidBasis(format!(
                "expected {} entries for a {n}x{d} matrix, got {}",
                n * d,
                entries.len()
            )));
        }
        let m = BasisMatrix { n, d, entries };
        for i in 0..n {
            let mut nonzero = 0;
            for k in 0..d {
                let v = m.get(i, k);
                if !(-1..=1).contains(&v) {
                    return Err(Error::InvalidBasis(format!(
                        "entry ({i},{k}) = {v} outside {{-1,0,1}}"
                    )));
                }
                if v != 0 {
                    nonzero += 1;
                }
            }
            if nonzero > 1 {
                return Err(Error::InvalidBasis(format!(
                    "row {i} has {nonzero} nonzero entries"
                )));
            }
        }
        let mut last_lead: Option<usize> = None;
        for k in 0..d {
            let lead = (0..n).find(|&i| m.get(i, k) != 0);
            let Some(lead) = lead else {
                return Err(Error::InvalidBasis(format!("column {k} is zero")));
            };
            if m.get(lead, k) != 1 {
                return Err(Error::InvalidBasis(format!(
                    "leading entry of column {k} is {}, expected 1",
                    m.get(lead, k)
                )));
            }
            if let Some(prev) = last_lead {
                if lead <= prev {
                    return Err(Error::InvalidBasis(format!(
                        "leading entries of columns {} and {k} are out of order",
                        k - 1
                    )));
                }
            }
            last_lead = Some(lead);
        }
        Ok(m)
    }

    /// The basis matrix of a coloring vector: column `k` (1-based color) is
    /// the signed indicator of the positions colored `±k`.
    pub fn from_coloring(c: &ColoringVector) -> Self {
        let n = c.len();
        let d = c.dimension();
        let mut entries = vec![0 as Int; n * d];
        for (i, &v) in c.entries().iter().enumerate() {
            for k in 1..=d {
                entries[i * d + (k - 1)] = signed_delta(v, k as Int);
            }
        }
        BasisMatrix { n, d, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns, i.e. the dimension of the spanned subspace.
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, row: usize, col: usize) -> Int {
        self.entries[row * self.d + col]
    }

    /// Column `col` as a dense vector of length `n`.
    pub fn column(&self, col: usize) -> Vec<Int> {
        (0..self.n).map(|i| self.get(i, col)).collect()
    }

    /// Recovers the coloring vector as the product with `(1, 2, .., d)`.
    pub fn to_coloring(&self) -> ColoringVector {
        let mut entries = vec![0 as Int; self.n];
        for i in 0..self.n {
            for k in 0..self.d {
                let v = self.get(i, k);
                if v != 0 {
                    entries[i] = v * (k as Int + 1);
                }
            }
        }
        debug_assert!(matches!(validate_coloring(&entries), Ok(true)));
        ColoringVector::from_valid(entries)
    }
}
