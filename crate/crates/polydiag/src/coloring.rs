//! Coloring vectors: canonical integer encodings of tagged partitions.
//!
//! A vector `c` in ℤⁿ is a coloring vector when `c_1 ∈ {0, 1}` and every
//! later entry satisfies `-m_i <= c_i <= 1 + m_i`, where `m_i` is the
//! maximum of the preceding entries. Equivalently: the first nonzero entry
//! is 1, and an entry equal to `-k` or `k + 1` must be preceded by an entry
//! equal to `k`. The subspace encoded by `c` consists of the vectors `v`
//! with `v_i = v_j` whenever `c_i = c_j`, `v_i = -v_j` whenever
//! `c_i = -c_j`, and `v_i = 0` whenever `c_i = 0`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::basis::BasisMatrix;
use crate::error::{Error, Result};
use crate::partition::TaggedPartition;
use crate::{Int, Rational};

/// A canonical coloring vector. Always valid by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoringVector {
    entries: Vec<Int>,
}

impl ColoringVector {
    /// Builds a coloring vector, rejecting invalid entry sequences.
    pub fn new(entries: Vec<Int>) -> Result<Self> {
        if validate_coloring(&entries)? {
            Ok(ColoringVector { entries })
        } else {
            Err(Error::InvalidColoring(format_entries(&entries)))
        }
    }

    /// Wraps entries that are already known to be valid.
    pub(crate) fn from_valid(entries: Vec<Int>) -> Self {
        debug_assert!(matches!(validate_coloring(&entries), Ok(true)));
        ColoringVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a coloring vector is nonempty by construction
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Int> {
        self.entries
    }

    /// The set of colors `{|c_i|}`, including 0 when a zero entry exists.
    pub fn colors(&self) -> BTreeSet<Int> {
        self.entries.iter().map(|&v| v.abs()).collect()
    }

    /// Dimension of the encoded subspace: the number of nonzero colors,
    /// which for a canonical vector equals the maximum entry.
    pub fn dimension(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0).max(0) as usize
    }

    /// True when every entry is positive, i.e. the subspace is defined by
    /// equalities only.
    pub fn is_synchrony(&self) -> bool {
        self.entries.iter().all(|&v| v >= 1)
    }

    /// True when the encoded tagged partition pairs every class with one of
    /// equal size; equivalently, every column of the basis matrix sums to
    /// zero.
    pub fn is_evenly_tagged(&self) -> bool {
        let d = self.dimension() as Int;
        (1..=d).all(|k| {
            let pos = self.entries.iter().filter(|&&v| v == k).count();
            let neg = self.entries.iter().filter(|&&v| v == -k).count();
            pos == neg
        })
    }

    /// The tagged partition whose classes are the level sets of the vector.
    pub fn to_partition(&self) -> TaggedPartition {
        TaggedPartition::from_coloring(self)
    }

    /// The signed basis matrix of the encoded subspace.
    pub fn basis(&self) -> BasisMatrix {
        BasisMatrix::from_coloring(self)
    }

    /// Exact membership test of a rational point in the encoded subspace.
    pub fn contains_point(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        let c = &self.entries;
        for i in 0..c.len() {
            if c[i] == 0 && !v[i].is_zero() {
                return Ok(false);
            }
            for j in 0..c.len() {
                if i == j {
                    continue;
                }
                if c[i] == c[j] && v[i] != v[j] {
                    return Ok(false);
                }
                if c[i] == -c[j] && v[i] != -v[j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ColoringVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_entries(&self.entries))
    }
}

fn format_entries(entries: &[Int]) -> String {
    let inner = entries
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("({inner})")
}

/// Tests the defining conditions: `c_1 ∈ {0,1}` and
/// `-m_i <= c_i <= 1 + m_i` with `m_i` the running maximum.
pub fn validate_coloring(entries: &[Int]) -> Result<bool> {
    if entries.is_empty() {
        return Err(Error::EmptyVector);
    }
    if entries[0] != 0 && entries[0] != 1 {
        return Ok(false);
    }
    let mut max = entries[0];
    for &v in &entries[1..] {
        if v < -max || v > 1 + max {
            return Ok(false);
        }
        max = max.max(v);
    }
    Ok(true)
}

/// Alternative characterization kept as an independent code path:
/// `-i + 1 <= c_i <= i`, every `c_i` has an earlier `c_j >= c_i - 1`, and
/// every negative `c_i` has an earlier opposite.
pub fn validate_coloring_alt(entries: &[Int]) -> Result<bool> {
    if entries.is_empty() {
        return Err(Error::EmptyVector);
    }
    for (idx, &v) in entries.iter().enumerate() {
        let i = (idx + 1) as Int;
        if v < -i + 1 || v > i {
            return Ok(false);
        }
        if idx == 0 {
            continue;
        }
        if !entries[..idx].iter().any(|&e| v <= 1 + e) {
            return Ok(false);
        }
        if v < 0 && !entries[..idx].iter().any(|&e| e == -v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Signed Kronecker delta: 1 when `i = j`, -1 when `i = -j` and `i != 0`,
/// 0 otherwise.
pub fn signed_delta(i: Int, j: Int) -> Int {
    if i == j {
        1
    } else if i == -j {
        -1
    } else {
        0
    }
}

/// The extended order on coloring vectors: `c <= w` when equal entries of
/// `c` map to equal entries of `w`, opposite entries to opposite entries,
/// and zero entries to zero entries. `w` may be any integer vector.
pub fn leq_extended(c: &ColoringVector, w: &[Int]) -> Result<bool> {
    if w.len() != c.len() {
        return Err(Error::LengthMismatch {
            expected: c.len(),
            got: w.len(),
        });
    }
    let c = c.entries();
    for i in 0..c.len() {
        if c[i] == 0 && w[i] != 0 {
            return Ok(false);
        }
        for j in 0..c.len() {
            if i == j {
                continue;
            }
            if c[i] == c[j] && w[i] != w[j] {
                return Ok(false);
            }
            if c[i] == -c[j] && w[i] != -w[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
