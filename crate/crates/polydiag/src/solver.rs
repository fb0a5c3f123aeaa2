//! Streaming enumeration of invariant polydiagonal subspaces.
//!
//! The search assigns the entries of a coloring vector left to right, with
//! values tried in ascending order, so single-threaded emission order is
//! lexicographic. For every color `k` and row `i` the solver maintains the
//! partial sum of `M b`, where `b` is the signed indicator of color `k`
//! restricted to assigned positions. A sum is final once every column the
//! row touches is assigned, so each invariance implication is checked at
//! the earliest depth at which it is decided and never re-checked.
//!
//! Memory is quadratic in the matrix size and independent of the number of
//! solutions.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc::{sync_channel, Receiver};
use std::sync::Arc;
use std::thread::JoinHandle;

use crate::coloring::ColoringVector;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::Int;

/// Which part of the solution set to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnumerationMode {
    /// All invariant polydiagonal subspaces.
    Polydiagonal,
    /// Invariant subspaces with all-positive coloring vectors.
    Synchrony,
    /// Invariant polydiagonal subspaces that are not synchrony subspaces.
    AntiSynchrony,
    /// Every coloring vector, ignoring the matrix entirely.
    AllColorings,
}

impl EnumerationMode {
    fn accepts(self, entries: &[Int]) -> bool {
        match self {
            EnumerationMode::AntiSynchrony => entries.iter().any(|&v| v <= 0),
            _ => true,
        }
    }
}

/// Search configuration. `threads = 1` runs the deterministic sequential
/// search; larger values split the tree at `split_depth` into independent
/// subtree tasks whose results are merged in unspecified order.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub threads: usize,
    /// Prefix length at which the parallel search splits the tree. `None`
    /// picks a small default.
    pub split_depth: Option<usize>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            threads: 1,
            split_depth: None,
        }
    }
}

/// Largest matrix size the brute-force oracle accepts by default.
pub const DEFAULT_ORACLE_CAP: usize = 7;

const CHANNEL_BOUND: usize = 1024;

/// Static data shared by every search state: the matrix in column form and
/// the constraint-check schedule.
#[derive(Debug)]
struct Tables {
    n: usize,
    mode: EnumerationMode,
    /// Nonzero entries of each matrix column as (row, value).
    cols: Vec<Vec<(usize, Int)>>,
    /// `zero_checks[d]`: rows whose zero-implication is decided once the
    /// first `d` entries are assigned.
    zero_checks: Vec<Vec<usize>>,
    /// `pair_checks[d]`: index pairs whose equal/opposite implications are
    /// decided once the first `d` entries are assigned.
    pair_checks: Vec<Vec<(usize, usize)>>,
    invariance: bool,
}

impl Tables {
    fn build(m: &IntegerMatrix, mode: EnumerationMode) -> Result<Arc<Tables>> {
        let n = m.n();
        let invariance = mode != EnumerationMode::AllColorings;
        if invariance {
            // Partial sums stay within the row magnitude sums, so checking
            // those now rules out overflow during the whole search.
            m.row_abs_sums()?;
        }
        let mut cols: Vec<Vec<(usize, Int)>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j);
                if v != 0 {
                    cols[j].push((i, v));
                }
            }
        }
        // ready[i]: number of assigned entries after which row i's partial
        // sums are final (the 1-based position of the last nonzero).
        let ready: Vec<usize> = (0..n)
            .map(|i| {
                (0..n)
                    .rev()
                    .find(|&j| m.get(i, j) != 0)
                    .map_or(0, |j| j + 1)
            })
            .collect();
        let mut zero_checks = vec![Vec::new(); n + 1];
        let mut pair_checks = vec![Vec::new(); n + 1];
        if invariance {
            for i in 0..n {
                zero_checks[ready[i].max(i + 1)].push(i);
                for j in i + 1..n {
                    pair_checks[ready[i].max(ready[j]).max(j + 1)].push((i, j));
                }
            }
        }
        Ok(Arc::new(Tables {
            n,
            mode,
            cols,
            zero_checks,
            pair_checks,
            invariance,
        }))
    }

    /// Tables for enumerating coloring vectors alone, with no matrix.
    fn colorings(n: usize) -> Arc<Tables> {
        Arc::new(Tables {
            n,
            mode: EnumerationMode::AllColorings,
            cols: vec![Vec::new(); n],
            zero_checks: vec![Vec::new(); n + 1],
            pair_checks: vec![Vec::new(); n + 1],
            invariance: false,
        })
    }
}

/// One depth-first search over coloring vectors, restartable and resumable.
struct Search {
    tables: Arc<Tables>,
    /// Entries assigned so far (positions `0..depth`).
    c: Vec<Int>,
    /// `maxima[t]` = maximum of the first `t` assigned entries, `maxima[0] = 0`.
    maxima: Vec<Int>,
    /// Partial sums of `M b` per color: `w[(k-1) * n + i]`.
    w: Vec<Int>,
    /// Next value to try at each depth.
    next_val: Vec<Int>,
    depth: usize,
    /// The search never backtracks below this depth (used to pin a prefix).
    floor: usize,
    done: bool,
}

impl Search {
    fn new(tables: Arc<Tables>) -> Search {
        let n = tables.n;
        let w_len = if tables.invariance { n.saturating_sub(1) * n } else { 0 };
        let mut s = Search {
            tables,
            c: vec![0; n],
            maxima: vec![0; n + 1],
            w: vec![0; w_len],
            next_val: vec![0; n],
            depth: 0,
            floor: 0,
            done: n == 0,
        };
        if n > 0 {
            s.next_val[0] = s.low(0);
        }
        s
    }

    /// A search pinned to an already-validated prefix.
    fn with_prefix(tables: Arc<Tables>, prefix: &[Int]) -> Search {
        let mut s = Search::new(tables);
        for (t, &v) in prefix.iter().enumerate() {
            s.c[t] = v;
            s.maxima[t + 1] = s.maxima[t].max(v);
            s.apply_sums(t, v);
            s.depth = t + 1;
        }
        s.floor = prefix.len();
        if s.depth < s.tables.n {
            s.next_val[s.depth] = s.low(s.depth);
        }
        s
    }

    fn low(&self, t: usize) -> Int {
        match self.tables.mode {
            EnumerationMode::Synchrony => 1,
            _ => -self.maxima[t],
        }
    }

    fn high(&self, t: usize) -> Int {
        1 + self.maxima[t]
    }

    fn apply_sums(&mut self, t: usize, v: Int) {
        if !self.tables.invariance || v == 0 {
            return;
        }
        let k = v.unsigned_abs() as usize;
        if k > self.tables.n - 1 {
            // Color n only occurs in (1, .., n), whose subspace is all of
            // the ambient space; its constraints are always satisfied.
            return;
        }
        let base = (k - 1) * self.tables.n;
        let sign = v.signum();
        for &(i, m) in &self.tables.cols[t] {
            self.w[base + i] += sign * m;
        }
    }

    fn revert_sums(&mut self, t: usize, v: Int) {
        if !self.tables.invariance || v == 0 {
            return;
        }
        let k = v.unsigned_abs() as usize;
        if k > self.tables.n - 1 {
            return;
        }
        let base = (k - 1) * self.tables.n;
        let sign = v.signum();
        for &(i, m) in &self.tables.cols[t] {
            self.w[base + i] -= sign * m;
        }
    }

    /// Runs every implication decided at depth `d` (entries `0..d`
    /// assigned). Colors above the running maximum have all-zero partial
    /// sums on both sides and are skipped.
    fn checks_pass(&self, d: usize) -> bool {
        if !self.tables.invariance {
            return true;
        }
        let n = self.tables.n;
        let kmax = (self.maxima[d].max(0) as usize).min(n - 1);
        if kmax == 0 {
            return true;
        }
        for &i in &self.tables.zero_checks[d] {
            if self.c[i] == 0 {
                for k in 0..kmax {
                    if self.w[k * n + i] != 0 {
                        return false;
                    }
                }
            }
        }
        for &(i, j) in &self.tables.pair_checks[d] {
            let (ci, cj) = (self.c[i], self.c[j]);
            if ci == cj {
                for k in 0..kmax {
                    if self.w[k * n + i] != self.w[k * n + j] {
                        return false;
                    }
                }
            }
            if ci == -cj {
                for k in 0..kmax {
                    if self.w[k * n + i] != -self.w[k * n + j] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn retreat(&mut self) {
        if self.depth == self.floor {
            self.done = true;
        } else {
            self.depth -= 1;
            let v = self.c[self.depth];
            self.revert_sums(self.depth, v);
        }
    }

    /// Next assignment of length `leaf` that satisfies every constraint
    /// decided up to that depth. With `leaf == n` these are complete
    /// solutions, in lexicographic order.
    fn next_leaf(&mut self, leaf: usize) -> Option<Vec<Int>> {
        while !self.done {
            if self.depth == leaf {
                let sol = self.c[..leaf].to_vec();
                self.retreat();
                return Some(sol);
            }
            let t = self.depth;
            let v = self.next_val[t];
            if v > self.high(t) {
                self.retreat();
                continue;
            }
            self.next_val[t] = v + 1;
            self.c[t] = v;
            self.maxima[t + 1] = self.maxima[t].max(v);
            self.apply_sums(t, v);
            if self.checks_pass(t + 1) {
                self.depth = t + 1;
                if self.depth < leaf {
                    self.next_val[self.depth] = self.low(self.depth);
                }
            } else {
                self.revert_sums(t, v);
            }
        }
        None
    }

    /// Next full solution accepted by the mode filter.
    fn next_solution(&mut self) -> Option<Vec<Int>> {
        let n = self.tables.n;
        let mode = self.tables.mode;
        while let Some(sol) = self.next_leaf(n) {
            if mode.accepts(&sol) {
                return Some(sol);
            }
        }
        None
    }
}

enum EnumerationInner {
    Sequential(Box<Search>),
    Parallel {
        receiver: Option<Receiver<Vec<Int>>>,
        workers: Vec<JoinHandle<()>>,
    },
}

/// Streaming iterator over the enumerated coloring vectors.
pub struct Enumeration {
    inner: EnumerationInner,
}

impl Iterator for Enumeration {
    type Item = ColoringVector;

    fn next(&mut self) -> Option<ColoringVector> {
        let entries = match &mut self.inner {
            EnumerationInner::Sequential(search) => search.next_solution(),
            EnumerationInner::Parallel { receiver, .. } => {
                receiver.as_ref().and_then(|rx| rx.recv().ok())
            }
        }?;
        Some(ColoringVector::from_valid(entries))
    }
}

impl Drop for Enumeration {
    fn drop(&mut self) {
        if let EnumerationInner::Parallel { receiver, workers } = &mut self.inner {
            // Dropping the receiver unblocks any worker waiting on a full
            // channel; they exit on the failed send.
            receiver.take();
            for handle in workers.drain(..) {
                let _ = handle.join();
            }
        }
    }
}

fn start(tables: Arc<Tables>, config: &SolveConfig) -> Enumeration {
    let n = tables.n;
    if config.threads <= 1 || n == 0 {
        return Enumeration {
            inner: EnumerationInner::Sequential(Box::new(Search::new(tables))),
        };
    }
    let split = config
        .split_depth
        .unwrap_or_else(|| 4.min(n.saturating_sub(1)))
        .min(n);
    let mut prefix_gen = Search::new(tables.clone());
    let mut prefixes = Vec::new();
    while let Some(p) = prefix_gen.next_leaf(split) {
        prefixes.push(p);
    }
    let prefixes = Arc::new(prefixes);
    let next_task = Arc::new(AtomicUsize::new(0));
    let (tx, rx) = sync_channel::<Vec<Int>>(CHANNEL_BOUND);
    let workers = (0..config.threads)
        .map(|_| {
            let tables = tables.clone();
            let prefixes = prefixes.clone();
            let next_task = next_task.clone();
            let tx = tx.clone();
            std::thread::spawn(move || loop {
                let task = next_task.fetch_add(1, Ordering::Relaxed);
                let Some(prefix) = prefixes.get(task) else {
                    return;
                };
                let mut search = Search::with_prefix(tables.clone(), prefix);
                while let Some(sol) = search.next_solution() {
                    if tx.send(sol).is_err() {
                        return; // consumer went away
                    }
                }
            })
        })
        .collect();
    Enumeration {
        inner: EnumerationInner::Parallel {
            receiver: Some(rx),
            workers,
        },
    }
}

/// Enumerates the coloring vectors of all polydiagonal subspaces invariant
/// under `m`, filtered by `mode`. Sequential runs emit in lexicographic
/// order; parallel runs emit the same set in unspecified order.
pub fn enumerate(
    m: &IntegerMatrix,
    mode: EnumerationMode,
    config: &SolveConfig,
) -> Result<Enumeration> {
    let tables = if mode == EnumerationMode::AllColorings {
        Tables::colorings(m.n())
    } else {
        Tables::build(m, mode)?
    };
    Ok(start(tables, config))
}

/// Enumerates every coloring vector of length `n` in lexicographic order.
pub fn enumerate_colorings(n: usize) -> Result<Enumeration> {
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    Ok(start(Tables::colorings(n), &SolveConfig::default()))
}

/// Number of solutions, without storing them.
pub fn count(m: &IntegerMatrix, mode: EnumerationMode) -> Result<u64> {
    Ok(enumerate(m, mode, &SolveConfig::default())?.count() as u64)
}

/// Independent oracle: filters the full coloring-vector list by the
/// direct invariance test. Only intended for small `n`.
pub fn brute_force_invariant(m: &IntegerMatrix) -> Result<BTreeSet<ColoringVector>> {
    brute_force_invariant_with_cap(m, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_invariant_with_cap(
    m: &IntegerMatrix,
    cap: usize,
) -> Result<BTreeSet<ColoringVector>> {
    if m.n() > cap {
        return Err(Error::OracleCapExceeded { n: m.n(), cap });
    }
    let mut out = BTreeSet::new();
    for c in enumerate_colorings(m.n())? {
        if m.is_invariant_direct(&c)? {
            out.insert(c);
        }
    }
    Ok(out)
}
