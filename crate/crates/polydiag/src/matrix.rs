//! Exact square integer matrices and rectangular rational matrices.
//!
//! All integer arithmetic is overflow-checked; rational entries are kept
//! reduced with positive denominators by construction.

use num_traits::{CheckedAdd, CheckedMul, One, Signed, Zero};

use crate::coloring::{leq_extended, ColoringVector};
use crate::error::{Error, Result};
use crate::{checked_add, checked_mul, Int, Rational};

/// Square `n x n` matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<Int>, // row-major
}

impl IntegerMatrix {
    pub fn new(n: usize, entries: Vec<Int>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotSquare { rows: 0, cols: 0 });
        }
        if entries.len() != n * n {
            return Err(Error::NotSquare {
                rows: entries.len() / n.max(1),
                cols: n,
            });
        }
        Ok(IntegerMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: rows.first().map_or(0, |r| r.len()),
            });
        }
        Ok(IntegerMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(n: usize) -> Result<Self> {
        IntegerMatrix::new(n, vec![0; n * n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = IntegerMatrix::zero(n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Checked matrix-vector product.
    pub fn mul_vector(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let mut out = vec![0 as Int; self.n];
        for i in 0..self.n {
            let mut acc: Int = 0;
            for j in 0..self.n {
                let m = self.get(i, j);
                if m != 0 && v[j] != 0 {
                    acc = checked_add(acc, checked_mul(m, v[j], "matrix-vector product")?,
                        "matrix-vector product")?;
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Checked scalar multiple.
    pub fn scale(&self, a: Int) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|&e| checked_mul(e, a, "matrix scaling"))
            .collect::<Result<Vec<Int>>>()?;
        Ok(IntegerMatrix {
            n: self.n,
            entries,
        })
    }

    /// Per-row sums of absolute values; an overflow here means partial sums
    /// of signed row entries could overflow during a search.
    pub fn row_abs_sums(&self) -> Result<Vec<Int>> {
        (0..self.n)
            .map(|i| {
                self.row(i).iter().try_fold(0 as Int, |acc, &e| {
                    checked_add(acc, e.abs(), "summing row magnitudes")
                })
            })
            .collect()
    }

    /// True for a symmetric 0/1 matrix with zero diagonal.
    pub fn is_adjacency(&self) -> bool {
        for i in 0..self.n {
            if self.get(i, i) != 0 {
                return false;
            }
            for j in 0..self.n {
                let v = self.get(i, j);
                if !(v == 0 || v == 1) || v != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the subspace of `c` is invariant under this matrix: the
    /// image of each basis vector must again satisfy the constraints of
    /// `c`, i.e. `c <= M b` in the extended order for every color `k` up
    /// to `n - 1`.
    pub fn is_invariant(&self, c: &ColoringVector) -> Result<bool> {
        if c.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: c.len(),
            });
        }
        let basis = c.basis();
        let kmax = basis.dim().min(self.n - 1);
        for k in 0..kmax {
            let image = self.mul_vector(&basis.column(k))?;
            if !leq_extended(c, &image)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Independent formulation of the invariance test: for every color of
    /// `c`, spell out the three implication families on the image of the
    /// corresponding basis vector. Used to cross-check `is_invariant`.
    pub fn is_invariant_direct(&self, c: &ColoringVector) -> Result<bool> {
        if c.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: c.len(),
            });
        }
        let entries = c.entries();
        for &k in c.colors().iter() {
            if k == 0 {
                continue;
            }
            let b: Vec<Int> = entries
                .iter()
                .map(|&v| crate::coloring::signed_delta(v, k))
                .collect();
            let w = self.mul_vector(&b)?;
            for i in 0..self.n {
                if entries[i] == 0 && w[i] != 0 {
                    return Ok(false);
                }
                for j in 0..self.n {
                    if i == j {
                        continue;
                    }
                    if entries[i] == entries[j] && w[i] != w[j] {
                        return Ok(false);
                    }
                    if entries[i] == -entries[j] && w[i] != -w[j] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Rectangular matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>, // row-major
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_integer(m: &IntegerMatrix) -> Self {
        RationalMatrix {
            rows: m.n(),
            cols: m.n(),
            entries: m.entries.iter().map(|&e| Rational::from(e)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Checked matrix product.
    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for l in 0..self.cols {
                    let term = self
                        .get(i, l)
                        .checked_mul(&other.get(l, j))
                        .ok_or_else(|| Error::overflow("rational matrix product"))?;
                    acc = acc
                        .checked_add(&term)
                        .ok_or_else(|| Error::overflow("rational matrix product"))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Least common multiple of all denominators.
    pub fn denominator_lcm(&self) -> Result<Int> {
        self.entries.iter().try_fold(1 as Int, |acc, e| {
            let d = *e.denom();
            let g = num_integer::gcd(acc, d);
            checked_mul(acc / g, d, "clearing denominators")
        })
    }

    /// Scales by the denominator LCM, returning the integer matrix and the
    /// factor used. Requires a square matrix.
    pub fn clear_denominators(&self) -> Result<(IntegerMatrix, Int)> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let lcm = self.denominator_lcm()?;
        let entries = self
            .entries
            .iter()
            .map(|e| checked_mul(*e.numer(), lcm / e.denom(), "clearing denominators"))
            .collect::<Result<Vec<Int>>>()?;
        Ok((IntegerMatrix::new(self.rows, entries)?, lcm))
    }

    /// Sum of absolute values of all entries, used in tests as a cheap
    /// distance-from-zero check.
    pub fn abs_sum(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, e| acc + e.abs())
    }
}
