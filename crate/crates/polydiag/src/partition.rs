//! Tagged partitions: partitions of `{0, .., n-1}` with a partial,
//! self-inverse pairing of classes. A paired class holds coordinates that
//! are opposite to those of its partner; the unique self-paired class, if
//! any, holds coordinates pinned to zero.

use std::collections::BTreeMap;

use crate::coloring::ColoringVector;
use crate::error::{Error, Result};
use crate::Int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedPartition {
    n: usize,
    /// Disjoint, nonempty, sorted index sets covering `0..n`, ordered by
    /// their minimum element.
    classes: Vec<Vec<usize>>,
    /// Partial involution: `partner[a] = Some(b)` pairs class `a` with
    /// class `b`. Self-inverse, with at most one fixed point.
    partner: Vec<Option<usize>>,
}

impl TaggedPartition {
    /// Builds a tagged partition from classes (sets of 0-based indices)
    /// and a partial pairing of class positions.
    pub fn new(n: usize, classes: Vec<Vec<usize>>, partner: Vec<Option<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("n must be at least 1".into()));
        }
        if partner.len() != classes.len() {
            return Err(Error::InvalidPartition(format!(
                "pairing has {} entries for {} classes",
                partner.len(),
                classes.len()
            )));
        }
        let mut seen = vec![false; n];
        let mut classes: Vec<Vec<usize>> = classes;
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            class.sort_unstable();
            class.dedup();
            for &i in class.iter() {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "index {i} out of range for n = {n}"
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!(
                        "index {i} appears in two classes"
                    )));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidPartition(
                "classes do not cover all indices".into(),
            ));
        }
        let mut fixed = 0usize;
        for (a, &p) in partner.iter().enumerate() {
            let Some(b) = p else { continue };
            if b >= classes.len() {
                return Err(Error::InvalidPartition(format!(
                    "pairing references class {b}, but there are only {}",
                    classes.len()
                )));
            }
            if partner[b] != Some(a) {
                return Err(Error::InvalidPartition(format!(
                    "pairing is not an involution at classes {a} and {b}"
                )));
            }
            if a == b {
                fixed += 1;
                if fixed > 1 {
                    return Err(Error::InvalidPartition(
                        "more than one self-paired class".into(),
                    ));
                }
            }
        }
        // Store classes ordered by minimum, remapping the pairing.
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&a| classes[a][0]);
        let mut rank = vec![0usize; classes.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut sorted_classes = vec![Vec::new(); classes.len()];
        let mut sorted_partner = vec![None; classes.len()];
        for (old, class) in classes.into_iter().enumerate() {
            sorted_classes[rank[old]] = class;
            sorted_partner[rank[old]] = partner[old].map(|b| rank[b]);
        }
        Ok(TaggedPartition {
            n,
            classes: sorted_classes,
            partner: sorted_partner,
        })
    }

    /// Level sets of a coloring vector, with classes of opposite values
    /// paired and the zero class self-paired.
    pub fn from_coloring(c: &ColoringVector) -> Self {
        TaggedPartition::from_signed_labels(c.entries())
            .expect("a coloring vector is a nonempty label vector")
    }

    /// Level sets of an arbitrary integer label vector: equal labels share
    /// a class, classes with opposite labels are paired, and the class
    /// labeled 0 is self-paired. Composing with [`Self::to_coloring`]
    /// canonicalizes any signed labeling.
    pub fn from_signed_labels(labels: &[Int]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyVector);
        }
        let mut by_value: BTreeMap<Int, Vec<usize>> = BTreeMap::new();
        for (i, &v) in labels.iter().enumerate() {
            by_value.entry(v).or_default().push(i);
        }
        let values: Vec<Int> = by_value.keys().copied().collect();
        let classes: Vec<Vec<usize>> = by_value.values().cloned().collect();
        let index_of = |v: Int| values.binary_search(&v).ok();
        let partner = values
            .iter()
            .map(|&v| index_of(-v))
            .collect::<Vec<Option<usize>>>();
        TaggedPartition::new(labels.len(), classes, partner)
    }

    /// The unique coloring vector for this partition. Classes outside the
    /// pairing, and the smaller-minimum class of each pair, are numbered
    /// `1..=d` by increasing minimum; their partners get the negated label
    /// and the self-paired class gets 0.
    pub fn to_coloring(&self) -> ColoringVector {
        // Classes whose partner has a minimum no larger than their own:
        // the self-paired class and the larger-minimum class of each pair.
        let in_q: Vec<bool> = (0..self.classes.len())
            .map(|a| match self.partner[a] {
                Some(b) => self.classes[b][0] <= self.classes[a][0],
                None => false,
            })
            .collect();
        let mut labels = vec![0 as Int; self.classes.len()];
        let mut next = 1 as Int;
        // self.classes is already ordered by minimum element.
        for a in 0..self.classes.len() {
            if in_q[a] {
                continue;
            }
            labels[a] = next;
            if let Some(b) = self.partner[a] {
                labels[b] = -next;
            }
            next += 1;
        }
        let mut entries = vec![0 as Int; self.n];
        for (a, class) in self.classes.iter().enumerate() {
            for &i in class {
                entries[i] = labels[a];
            }
        }
        ColoringVector::from_valid(entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Classes ordered by their minimum element, members sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Partner class of class `a` under the involution, if paired.
    pub fn partner(&self, a: usize) -> Option<usize> {
        self.partner.get(a).copied().flatten()
    }

    /// True when the involution is the empty function.
    pub fn is_untagged(&self) -> bool {
        self.partner.iter().all(|p| p.is_none())
    }
}
