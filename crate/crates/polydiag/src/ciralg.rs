//! Split-and-cir baseline for invariant synchrony subspaces.
//!
//! The coarsest invariant refinement (cir) of a partition is the invariant
//! synchrony partition with the fewest classes refining it; it is computed
//! by splitting classes on their matrix row sums into the current classes
//! until a fixed point. The full enumeration starts from the one-class
//! partition and alternates cir with all two-way class splits, deduplicated
//! through canonical coloring keys, until the candidate queue drains.
//!
//! This is the cross-validation baseline for the solver's synchrony mode;
//! it only handles partitions without sign pairings.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::coloring::ColoringVector;
use crate::error::Result;
use crate::matrix::IntegerMatrix;
use crate::partition::TaggedPartition;
use crate::{checked_add, Int};

/// An untagged partition of `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    /// Disjoint nonempty sorted classes covering `0..n`, ordered by minimum.
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let untagged = vec![None; classes.len()];
        let tagged = TaggedPartition::new(n, classes, untagged)?;
        Ok(Partition {
            n,
            classes: tagged.classes().to_vec(),
        })
    }

    /// The one-class partition `{{0, .., n-1}}`.
    pub fn one_class(n: usize) -> Result<Self> {
        Partition::new(n, vec![(0..n).collect()])
    }

    /// The all-singletons partition.
    pub fn singletons(n: usize) -> Result<Self> {
        Partition::new(n, (0..n).map(|i| vec![i]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Canonical synchrony coloring vector: class labels `1..=d` assigned
    /// by increasing class minimum.
    pub fn to_coloring(&self) -> ColoringVector {
        TaggedPartition::new(self.n, self.classes.clone(), vec![None; self.classes.len()])
            .expect("partition classes are valid")
            .to_coloring()
    }

    /// Level sets of an all-positive coloring vector.
    pub fn from_coloring(c: &ColoringVector) -> Self {
        let mut by_value: BTreeMap<Int, Vec<usize>> = BTreeMap::new();
        for (i, &v) in c.entries().iter().enumerate() {
            by_value.entry(v).or_default().push(i);
        }
        Partition::new(c.len(), by_value.into_values().collect())
            .expect("level sets form a partition")
    }
}

/// Row sums of row `i` of the matrix into each class of the partition, in
/// class order.
pub fn signature(m: &IntegerMatrix, i: usize, p: &Partition) -> Result<Vec<Int>> {
    p.classes()
        .iter()
        .map(|class| {
            class.iter().try_fold(0 as Int, |acc, &j| {
                checked_add(acc, m.get(i, j), "class row sum")
            })
        })
        .collect()
}

/// Coarsest invariant refinement: repeatedly splits each class by equality
/// of signatures until no class splits.
pub fn cir(m: &IntegerMatrix, p: &Partition) -> Result<Partition> {
    cir_with_order(m, p, false)
}

/// Same fixed point, processing the class worklist in forward or reverse
/// order; the result is order-independent and tests assert as much.
pub fn cir_with_order(m: &IntegerMatrix, p: &Partition, reverse: bool) -> Result<Partition> {
    let mut current = p.clone();
    loop {
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(current.classes.len());
        let mut changed = false;
        let mut order: Vec<usize> = (0..current.classes.len()).collect();
        if reverse {
            order.reverse();
        }
        for idx in order {
            let class = &current.classes[idx];
            let mut groups: BTreeMap<Vec<Int>, Vec<usize>> = BTreeMap::new();
            for &i in class {
                groups.entry(signature(m, i, &current)?).or_default().push(i);
            }
            if groups.len() > 1 {
                changed = true;
            }
            next.extend(groups.into_values());
        }
        current = Partition::new(current.n, next)?;
        if !changed {
            return Ok(current);
        }
    }
}

/// All partitions whose synchrony subspaces are invariant under `m`,
/// discovered breadth-first from the one-class partition.
pub fn split_and_cir(m: &IntegerMatrix) -> Result<Vec<Partition>> {
    let n = m.n();
    let mut queue: VecDeque<Partition> = VecDeque::new();
    let mut queued: HashSet<Vec<Int>> = HashSet::new();
    let mut found: HashSet<Vec<Int>> = HashSet::new();
    let mut result: Vec<Partition> = Vec::new();

    let start = Partition::one_class(n)?;
    queued.insert(start.to_coloring().into_entries());
    queue.push_back(start);

    while let Some(candidate) = queue.pop_front() {
        let invariant = cir(m, &candidate)?;
        if !found.insert(invariant.to_coloring().into_entries()) {
            continue;
        }
        for (idx, class) in invariant.classes().iter().enumerate() {
            if class.len() < 2 {
                continue;
            }
            // Unordered two-way splits: the first member stays in the left
            // part, the remaining members range over all proper subsets.
            let rest = &class[1..];
            for mask in 0..(1u128 << rest.len()) - 1 {
                let mut left = vec![class[0]];
                let mut right = Vec::new();
                for (b, &member) in rest.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        left.push(member);
                    } else {
                        right.push(member);
                    }
                }
                let mut classes = invariant.classes().to_vec();
                classes[idx] = left;
                classes.push(right);
                let split = Partition::new(n, classes)?;
                if queued.insert(split.to_coloring().into_entries()) {
                    queue.push_back(split);
                }
            }
        }
        result.push(invariant);
    }
    result.sort_by(|a, b| a.to_coloring().cmp(&b.to_coloring()));
    Ok(result)
}
