//! Shared helpers for the integration suites: deterministic random data
//! and a small exact linear algebra oracle kept independent of the library
//! implementation.
#![allow(dead_code)] // each test binary uses a different subset

use polydiag::{ColoringVector, Int, IntegerMatrix, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut StdRng, n: usize, lo: Int, hi: Int) -> IntegerMatrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    IntegerMatrix::from_rows(rows).unwrap()
}

/// Uniformly random coloring vector, drawn entry by entry within the
/// defining bounds.
pub fn random_coloring(rng: &mut StdRng, n: usize) -> ColoringVector {
    let mut entries: Vec<Int> = Vec::with_capacity(n);
    let mut max = 0;
    for _ in 0..n {
        let v = rng.gen_range(-max..=max + 1);
        entries.push(v);
        max = max.max(v);
    }
    ColoringVector::new(entries).unwrap()
}

/// Dense rational matrix for the oracle, row-major.
#[derive(Clone)]
pub struct OracleMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl OracleMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        OracleMatrix {
            rows,
            cols,
            data: vec![Rational::from(0); rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    /// Gaussian elimination to row echelon form; returns the rank.
    pub fn rank(mut self) -> usize {
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pivot) = (row..self.rows).find(|&r| self.get(r, col) != Rational::from(0))
            else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.get(row, j);
                self.set(row, j, self.get(pivot, j));
                self.set(pivot, j, tmp);
            }
            let inv = Rational::from(1) / self.get(row, col);
            for j in col..self.cols {
                let v = self.get(row, j) * inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != Rational::from(0) {
                    let factor = self.get(r, col);
                    for j in col..self.cols {
                        let v = self.get(r, j) - factor * self.get(row, j);
                        self.set(r, j, v);
                    }
                }
            }
            row += 1;
            if row == self.rows {
                break;
            }
        }
        row
    }
}

/// Whether `v` is a linear combination of the columns of `columns` (each of
/// length `n`), decided by comparing ranks of the column matrix and the
/// augmented matrix.
pub fn in_column_span(n: usize, columns: &[Vec<Int>], v: &[Rational]) -> bool {
    let d = columns.len();
    let mut plain = OracleMatrix::new(n, d);
    let mut augmented = OracleMatrix::new(n, d + 1);
    for (k, col) in columns.iter().enumerate() {
        for i in 0..n {
            plain.set(i, k, Rational::from(col[i]));
            augmented.set(i, k, Rational::from(col[i]));
        }
    }
    for i in 0..n {
        augmented.set(i, d, v[i]);
    }
    plain.rank() == augmented.rank()
}
