//! Signed vertex symmetries and their action on invariant subspaces.
//!
//! A signed symmetry is a pair of a vertex permutation and a global sign;
//! it acts on a vector by permuting coordinates and multiplying by the
//! sign. The group generated by the automorphisms of a graph together with
//! the sign flip acts on the family of invariant polydiagonal subspaces of
//! the graph's matrices; this module computes that action's orbits, point
//! stabilizers, fixed subspaces, and the classification of family members
//! into fixed-point subspaces and anomalous invariant subspaces.

use std::collections::BTreeSet;
use std::fmt;

use crate::coloring::ColoringVector;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::partition::TaggedPartition;
use crate::Int;

/// Default cap on the built-in graph automorphism search.
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 16;

/// Default cap on materialized group sizes.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A vertex permutation together with a global sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedSymmetry {
    /// Image array: position `i` reads from position `perm[i]`.
    perm: Vec<usize>,
    /// Either `1` or `-1`.
    sign: Int,
}

impl SignedSymmetry {
    pub fn new(perm: Vec<usize>, sign: Int) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidPermutation(format!(
                "sign must be 1 or -1, got {sign}"
            )));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {p} out of range for degree {n}"
                )));
            }
            if seen[p] {
                return Err(Error::InvalidPermutation(format!("image {p} repeated")));
            }
            seen[p] = true;
        }
        Ok(SignedSymmetry { perm, sign })
    }

    pub fn identity(degree: usize) -> Self {
        SignedSymmetry {
            perm: (0..degree).collect(),
            sign: 1,
        }
    }

    /// The sign flip `x -> -x`.
    pub fn sign_flip(degree: usize) -> Self {
        SignedSymmetry {
            perm: (0..degree).collect(),
            sign: -1,
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn sign(&self) -> Int {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.sign == 1 && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Group product: `g.compose(&h)` acts as `h` first, then `g`, so that
    /// `compose(g, h).act(x) == g.act(h.act(x))`.
    pub fn compose(&self, other: &SignedSymmetry) -> SignedSymmetry {
        debug_assert_eq!(self.degree(), other.degree());
        SignedSymmetry {
            perm: (0..self.perm.len())
                .map(|i| other.perm[self.perm[i]])
                .collect(),
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> SignedSymmetry {
        let mut perm = vec![0usize; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        SignedSymmetry {
            perm,
            sign: self.sign,
        }
    }

    /// Applies the symmetry to a coordinate vector.
    pub fn act_slice<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Copy + std::ops::Neg<Output = T>,
    {
        self.perm
            .iter()
            .map(|&p| if self.sign < 0 { -x[p] } else { x[p] })
            .collect()
    }

    /// Image of a polydiagonal subspace: transports the constraint pattern
    /// of `c` and canonicalizes the result.
    pub fn act(&self, c: &ColoringVector) -> Result<ColoringVector> {
        if c.len() != self.degree() {
            return Err(Error::LengthMismatch {
                expected: self.degree(),
                got: c.len(),
            });
        }
        let labels = self.act_slice(c.entries());
        Ok(TaggedPartition::from_signed_labels(&labels)?.to_coloring())
    }
}

impl fmt::Display for SignedSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "- ")?;
        }
        let images = self
            .perm
            .iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ");
        write!(f, "{images}")
    }
}

/// A finite group of signed symmetries, materialized as a sorted element
/// list closed under composition and inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    degree: usize,
    elements: Vec<SignedSymmetry>,
}

impl SymmetryGroup {
    pub fn trivial(degree: usize) -> Self {
        SymmetryGroup {
            degree,
            elements: vec![SignedSymmetry::identity(degree)],
        }
    }

    /// Smallest group containing the generators.
    pub fn closure(degree: usize, generators: &[SignedSymmetry]) -> Result<Self> {
        SymmetryGroup::closure_with_cap(degree, generators, DEFAULT_GROUP_CAP)
    }

    pub fn closure_with_cap(
        degree: usize,
        generators: &[SignedSymmetry],
        cap: usize,
    ) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::LengthMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut elements: BTreeSet<SignedSymmetry> = BTreeSet::new();
        let mut frontier = vec![SignedSymmetry::identity(degree)];
        elements.insert(SignedSymmetry::identity(degree));
        while let Some(g) = frontier.pop() {
            for gen in generators {
                let product = g.compose(gen);
                if elements.insert(product.clone()) {
                    if elements.len() > cap {
                        return Err(Error::GroupCapExceeded { cap });
                    }
                    frontier.push(product);
                }
            }
        }
        Ok(SymmetryGroup {
            degree,
            elements: elements.into_iter().collect(),
        })
    }

    /// The direct product with the sign flip.
    pub fn adjoin_sign_flip(&self) -> SymmetryGroup {
        let flip = SignedSymmetry::sign_flip(self.degree);
        let mut elements: BTreeSet<SignedSymmetry> = self.elements.iter().cloned().collect();
        for g in &self.elements {
            elements.insert(g.compose(&flip));
        }
        SymmetryGroup {
            degree: self.degree,
            elements: elements.into_iter().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedSymmetry] {
        &self.elements
    }

    pub fn contains(&self, g: &SignedSymmetry) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Subgroup fixing the subspace of `c` pointwise: every basis vector
    /// must be mapped to itself.
    pub fn point_stabilizer(&self, c: &ColoringVector) -> Result<SymmetryGroup> {
        if c.len() != self.degree {
            return Err(Error::LengthMismatch {
                expected: self.degree,
                got: c.len(),
            });
        }
        let basis = c.basis();
        let columns: Vec<Vec<Int>> = (0..basis.dim()).map(|k| basis.column(k)).collect();
        let elements: Vec<SignedSymmetry> = self
            .elements
            .iter()
            .filter(|g| columns.iter().all(|b| &g.act_slice(b) == b))
            .cloned()
            .collect();
        Ok(SymmetryGroup {
            degree: self.degree,
            elements,
        })
    }

    /// The common fixed space `{x | g x = x for all g}`, as a canonical
    /// coloring vector. Computed by merging coordinates related by any
    /// group element, tracking relative signs; a coordinate forced equal to
    /// its own negative is pinned to zero.
    pub fn fixed_subspace(&self) -> ColoringVector {
        let n = self.degree;
        let mut uf = SignedUnionFind::new(n);
        for g in &self.elements {
            for i in 0..n {
                // x_i = sign * x_{perm(i)} for every fixed x.
                uf.merge(i, g.perm[i], g.sign);
            }
        }
        let labels = uf.labels();
        TaggedPartition::from_signed_labels(&labels)
            .expect("degree is at least 1")
            .to_coloring()
    }
}

/// Union-find on coordinates with a relative sign on every edge.
struct SignedUnionFind {
    parent: Vec<usize>,
    /// Sign of the coordinate relative to its parent.
    sign: Vec<Int>,
    /// Root flag: the class is forced to zero.
    zero: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind {
            parent: (0..n).collect(),
            sign: vec![1; n],
            zero: vec![false; n],
        }
    }

    /// Root of `i` and the sign of `x_i` relative to the root.
    fn find(&mut self, i: usize) -> (usize, Int) {
        if self.parent[i] == i {
            return (i, 1);
        }
        let (root, parent_sign) = self.find(self.parent[i]);
        self.parent[i] = root;
        self.sign[i] *= parent_sign;
        (root, self.sign[i])
    }

    /// Imposes `x_i = s * x_j`.
    fn merge(&mut self, i: usize, j: usize, s: Int) {
        let (ri, si) = self.find(i);
        let (rj, sj) = self.find(j);
        if ri == rj {
            if si != s * sj {
                // x = -x within the class.
                self.zero[ri] = true;
            }
            return;
        }
        // x_ri = si^-1 * x_i = si * s * sj * x_rj (signs are involutions).
        self.parent[ri] = rj;
        self.sign[ri] = si * s * sj;
        if self.zero[ri] {
            self.zero[rj] = true;
        }
    }

    /// Signed labels per coordinate: zero classes get 0, other classes get
    /// consecutive ids with the coordinate's sign relative to the root.
    fn labels(&mut self) -> Vec<Int> {
        let n = self.parent.len();
        let mut root_id = vec![0 as Int; n];
        let mut next = 1 as Int;
        let mut labels = vec![0 as Int; n];
        for i in 0..n {
            let (root, s) = self.find(i);
            if self.zero[root] {
                continue;
            }
            if root_id[root] == 0 {
                root_id[root] = next;
                next += 1;
            }
            labels[i] = s * root_id[root];
        }
        labels
    }
}

/// All automorphisms of the simple graph with the given adjacency matrix,
/// found by backtracking with degree and partial-adjacency pruning. Meant
/// for small graphs; larger ones should come with explicit generators.
pub fn graph_automorphisms(adjacency: &IntegerMatrix) -> Result<SymmetryGroup> {
    graph_automorphisms_with_cap(adjacency, DEFAULT_AUTOMORPHISM_CAP)
}

pub fn graph_automorphisms_with_cap(
    adjacency: &IntegerMatrix,
    cap: usize,
) -> Result<SymmetryGroup> {
    if !adjacency.is_adjacency() {
        return Err(Error::NotAdjacency);
    }
    let n = adjacency.n();
    if n > cap {
        return Err(Error::AutomorphismCapExceeded { n, cap });
    }
    let degrees: Vec<Int> = (0..n)
        .map(|i| (0..n).map(|j| adjacency.get(i, j)).sum())
        .collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut found: Vec<SignedSymmetry> = Vec::new();
    search_automorphisms(adjacency, &degrees, 0, &mut image, &mut used, &mut found);
    found.sort();
    Ok(SymmetryGroup {
        degree: n,
        elements: found,
    })
}

fn search_automorphisms(
    adjacency: &IntegerMatrix,
    degrees: &[Int],
    v: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<SignedSymmetry>,
) {
    let n = adjacency.n();
    if v == n {
        found.push(
            SignedSymmetry::new(image.clone(), 1).expect("search produces valid permutations"),
        );
        return;
    }
    for u in 0..n {
        if used[u] || degrees[u] != degrees[v] {
            continue;
        }
        if (0..v).any(|prev| adjacency.get(v, prev) != adjacency.get(u, image[prev])) {
            continue;
        }
        image[v] = u;
        used[u] = true;
        search_automorphisms(adjacency, degrees, v + 1, image, used, found);
        used[u] = false;
    }
    image[v] = usize::MAX;
}

/// One orbit of the group action on a family of coloring vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically smallest member.
    pub representative: ColoringVector,
    /// All members, sorted.
    pub members: Vec<ColoringVector>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partitions a group-closed family into orbits, sorted by representative.
/// Fails with the offending pair when the family is not closed.
pub fn orbits(group: &SymmetryGroup, family: &BTreeSet<ColoringVector>) -> Result<Vec<Orbit>> {
    let mut assigned: BTreeSet<ColoringVector> = BTreeSet::new();
    let mut out = Vec::new();
    for c in family {
        if assigned.contains(c) {
            continue;
        }
        let mut members = BTreeSet::new();
        for g in group.elements() {
            let image = g.act(c)?;
            if !family.contains(&image) {
                return Err(Error::FamilyNotClosed {
                    coloring: c.to_string(),
                    image: image.to_string(),
                });
            }
            members.insert(image);
        }
        for member in &members {
            assigned.insert(member.clone());
        }
        let members: Vec<ColoringVector> = members.into_iter().collect();
        out.push(Orbit {
            representative: members[0].clone(),
            members,
        });
    }
    Ok(out)
}

/// Classification of an invariant subspace relative to the group action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceClass {
    /// The subspace is the common fixed space of its own point stabilizer.
    FixedPoint,
    /// Anomalous invariant subspace: strictly smaller than that fixed space.
    Anomalous,
}

/// Per-member classification of a family, with diagnostics for the cases
/// where the plain fixed space is not itself a family member with the same
/// stabilizer (the two notions of fixed-point subspace can then differ).
#[derive(Debug, Clone)]
pub struct AisReport {
    /// One entry per family member, in sorted family order.
    pub labels: Vec<(ColoringVector, SubspaceClass)>,
    pub warnings: Vec<String>,
}

impl AisReport {
    pub fn class_of(&self, c: &ColoringVector) -> Option<SubspaceClass> {
        self.labels
            .iter()
            .find(|(member, _)| member == c)
            .map(|&(_, class)| class)
    }

    pub fn anomalous_count(&self) -> usize {
        self.labels
            .iter()
            .filter(|(_, class)| *class == SubspaceClass::Anomalous)
            .count()
    }
}

/// Labels every member of an invariant family as a fixed-point subspace or
/// an anomalous invariant subspace: `c` is anomalous when the common fixed
/// space of its point stabilizer differs from `c`.
pub fn classify_ais(
    m: &IntegerMatrix,
    group: &SymmetryGroup,
    family: &BTreeSet<ColoringVector>,
) -> Result<AisReport> {
    let mut labels = Vec::with_capacity(family.len());
    let mut warnings = Vec::new();
    for c in family {
        let stabilizer = group.point_stabilizer(c)?;
        let fixed = stabilizer.fixed_subspace();
        let class = if fixed == *c {
            SubspaceClass::FixedPoint
        } else {
            SubspaceClass::Anomalous
        };
        if class == SubspaceClass::Anomalous {
            // The comparison is against the plain common fixed space; flag
            // the cases where that space is not the invariant subspace of
            // maximal extent with the same stabilizer.
            if !m.is_invariant(&fixed)? {
                warnings.push(format!(
                    "fixed space {fixed} of the stabilizer of {c} is not invariant; \
                     its classification follows the plain fixed space"
                ));
            } else if group.point_stabilizer(&fixed)? != stabilizer {
                warnings.push(format!(
                    "fixed space {fixed} of the stabilizer of {c} has a larger stabilizer; \
                     its classification follows the plain fixed space"
                ));
            }
        }
        labels.push((c.clone(), class));
    }
    Ok(AisReport { labels, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(entries: &[Int]) -> ColoringVector {
        ColoringVector::new(entries.to_vec()).unwrap()
    }

    fn perm(images: &[usize]) -> SignedSymmetry {
        SignedSymmetry::new(images.to_vec(), 1).unwrap()
    }

    #[test]
    fn rejects_invalid_permutations() {
        assert!(SignedSymmetry::new(vec![0, 0], 1).is_err());
        assert!(SignedSymmetry::new(vec![0, 2], 1).is_err());
        assert!(SignedSymmetry::new(vec![0, 1], 2).is_err());
    }

    #[test]
    fn compose_matches_sequential_action() {
        let g = SignedSymmetry::new(vec![1, 2, 0], -1).unwrap();
        let h = SignedSymmetry::new(vec![2, 0, 1], 1).unwrap();
        let x = [10 as Int, 20, 30];
        assert_eq!(
            g.compose(&h).act_slice(&x),
            g.act_slice(&h.act_slice(&x))
        );
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn empty_generator_set_gives_trivial_group() {
        let g = SymmetryGroup::closure(4, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn sign_flip_generates_order_two() {
        let g = SymmetryGroup::closure(3, &[SignedSymmetry::sign_flip(3)]).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn pentagon_symmetries_with_sign_flip() {
        // Rotation and reflection generate the 10-element dihedral group;
        // the sign flip doubles it.
        let rotation = perm(&[1, 2, 3, 4, 0]);
        let reflection = perm(&[0, 4, 3, 2, 1]);
        let flip = SignedSymmetry::sign_flip(5);
        let g = SymmetryGroup::closure(5, &[rotation, reflection, flip]).unwrap();
        assert_eq!(g.order(), 20);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let rotation = perm(&[1, 2, 3, 4, 0]);
        assert!(matches!(
            SymmetryGroup::closure_with_cap(5, &[rotation], 3),
            Err(Error::GroupCapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn adjoin_sign_flip_doubles_sign_free_groups() {
        let rotation = perm(&[1, 2, 0]);
        let g = SymmetryGroup::closure(3, &[rotation]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.adjoin_sign_flip().order(), 6);
    }

    #[test]
    fn action_on_colorings() {
        let c = cv(&[1, 0, 2, 1, -1]);
        let id = SignedSymmetry::identity(5);
        assert_eq!(id.act(&c).unwrap(), c);
        // Negating every coordinate maps the subspace to itself.
        let flip = SignedSymmetry::sign_flip(5);
        assert_eq!(flip.act(&c).unwrap(), c);
    }

    #[test]
    fn transpositions_move_constraint_patterns() {
        let c = cv(&[1, 2, 2]);
        // Swapping the first two coordinates: equality of coordinates 2,3
        // becomes equality of coordinates 1,3.
        let swap01 = perm(&[1, 0, 2]);
        assert_eq!(swap01.act(&c).unwrap(), cv(&[1, 2, 1]));
        // Swapping coordinates 1,3 instead yields equality of 1,2.
        let swap02 = perm(&[2, 1, 0]);
        assert_eq!(swap02.act(&c).unwrap(), cv(&[1, 1, 2]));
    }

    #[test]
    fn path_graph_automorphisms() {
        let p3 = IntegerMatrix::from_rows(vec![
            vec![0, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 0],
        ])
        .unwrap();
        let g = graph_automorphisms(&p3).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn edgeless_graph_automorphisms() {
        let empty = IntegerMatrix::zero(3).unwrap();
        assert_eq!(graph_automorphisms(&empty).unwrap().order(), 6);
    }

    #[test]
    fn automorphism_preconditions() {
        let not_adj = IntegerMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert!(matches!(
            graph_automorphisms(&not_adj),
            Err(Error::NotAdjacency)
        ));
        let big = IntegerMatrix::zero(17).unwrap();
        assert!(matches!(
            graph_automorphisms(&big),
            Err(Error::AutomorphismCapExceeded { n: 17, cap: 16 })
        ));
    }

    #[test]
    fn stabilizer_of_zero_vector_is_whole_group() {
        let g = SymmetryGroup::closure(3, &[perm(&[1, 2, 0]), SignedSymmetry::sign_flip(3)])
            .unwrap();
        let stab = g.point_stabilizer(&cv(&[0, 0, 0])).unwrap();
        assert_eq!(stab.order(), g.order());
    }

    #[test]
    fn stabilizer_of_full_space_is_trivial() {
        let g = SymmetryGroup::closure(3, &[perm(&[1, 2, 0]), SignedSymmetry::sign_flip(3)])
            .unwrap();
        let stab = g.point_stabilizer(&cv(&[1, 2, 3])).unwrap();
        assert_eq!(stab.order(), 1);
    }

    #[test]
    fn fixed_subspace_of_trivial_group_is_everything() {
        let g = SymmetryGroup::trivial(4);
        assert_eq!(g.fixed_subspace(), cv(&[1, 2, 3, 4]));
    }

    #[test]
    fn fixed_subspace_of_sign_flip_is_zero() {
        let g = SymmetryGroup::closure(3, &[SignedSymmetry::sign_flip(3)]).unwrap();
        assert_eq!(g.fixed_subspace(), cv(&[0, 0, 0]));
    }

    #[test]
    fn fixed_subspace_of_path_reflection() {
        let g = SymmetryGroup::closure(4, &[perm(&[3, 2, 1, 0])]).unwrap();
        assert_eq!(g.fixed_subspace(), cv(&[1, 2, 2, 1]));
    }

    #[test]
    fn orbits_under_trivial_group_are_singletons() {
        let family: BTreeSet<ColoringVector> =
            [cv(&[0, 0]), cv(&[1, 1]), cv(&[1, 2])].into_iter().collect();
        let orbits = orbits(&SymmetryGroup::trivial(2), &family).unwrap();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn zero_vector_is_a_fixed_orbit() {
        let g = SymmetryGroup::closure(2, &[perm(&[1, 0]), SignedSymmetry::sign_flip(2)])
            .unwrap();
        let family: BTreeSet<ColoringVector> = [cv(&[0, 0])].into_iter().collect();
        let orbits = orbits(&g, &family).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].representative, cv(&[0, 0]));
    }

    #[test]
    fn unclosed_family_is_reported() {
        let g = SymmetryGroup::closure(2, &[perm(&[1, 0])]).unwrap();
        let family: BTreeSet<ColoringVector> = [cv(&[1, 0])].into_iter().collect();
        assert!(matches!(
            orbits(&g, &family),
            Err(Error::FamilyNotClosed { .. })
        ));
    }

    #[test]
    fn full_space_is_always_fixed_point() {
        let m = IntegerMatrix::identity(3).unwrap();
        let g = SymmetryGroup::closure(3, &[perm(&[1, 2, 0])]).unwrap();
        let family: BTreeSet<ColoringVector> = [cv(&[1, 2, 3])].into_iter().collect();
        let report = classify_ais(&m, &g, &family).unwrap();
        assert_eq!(report.labels[0].1, SubspaceClass::FixedPoint);
        assert!(report.warnings.is_empty());
    }
}
