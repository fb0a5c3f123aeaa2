//! Posets of coloring vectors under the extended order, as Hasse diagrams.
//!
//! The family of invariant polydiagonal subspaces of a matrix is a lattice
//! ordered by reverse inclusion; the coloring vector `(1, .., n)` (the
//! ambient space) is its minimum and `(0, .., 0)` (the zero subspace) its
//! maximum. Arbitrary subfamilies, such as orbit posets, need not be
//! lattices.

use std::fmt::Write as _;

use crate::coloring::{leq_extended, ColoringVector};
use crate::error::{Error, Result};

/// A finite poset of coloring vectors with its transitive reduction.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    /// Nodes in lexicographic order.
    nodes: Vec<ColoringVector>,
    /// Cover edges as (lower, upper) node indices, no transitive edges.
    covers: Vec<(usize, usize)>,
    /// Full order relation: `leq[a]` holds the indices above or equal to `a`.
    leq: Vec<Vec<bool>>,
}

/// Builds the Hasse diagram of a family of coloring vectors of equal
/// length. Covers are the transitive reduction of the extended order.
pub fn build_poset<I>(family: I) -> Result<HasseDiagram>
where
    I: IntoIterator<Item = ColoringVector>,
{
    let mut nodes: Vec<ColoringVector> = family.into_iter().collect();
    nodes.sort();
    nodes.dedup();
    if let Some(first) = nodes.first() {
        if let Some(bad) = nodes.iter().find(|c| c.len() != first.len()) {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                got: bad.len(),
            });
        }
    }
    let m = nodes.len();
    let mut leq = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            leq[a][b] = leq_extended(&nodes[a], nodes[b].entries())?;
        }
    }
    let mut covers = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a == b || !leq[a][b] {
                continue;
            }
            let direct = !(0..m).any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            if direct {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    Ok(HasseDiagram { nodes, covers, leq })
}

impl HasseDiagram {
    pub fn nodes(&self) -> &[ColoringVector] {
        &self.nodes
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Order test between two nodes by index.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Nodes with no strictly smaller node.
    pub fn minimal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| b != a && self.leq[b][a]))
            .collect()
    }

    /// Nodes with no strictly larger node.
    pub fn maximal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| b != a && self.leq[a][b]))
            .collect()
    }

    /// True when every pair of nodes has a least upper bound and a greatest
    /// lower bound within the family.
    pub fn is_lattice(&self) -> bool {
        let m = self.len();
        for a in 0..m {
            for b in a + 1..m {
                if self.bound(a, b, true).is_none() || self.bound(a, b, false).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Least upper bound (`upper = true`) or greatest lower bound of a pair
    /// within the family, if it exists.
    fn bound(&self, a: usize, b: usize, upper: bool) -> Option<usize> {
        let related = |x: usize, y: usize| if upper { self.leq[x][y] } else { self.leq[y][x] };
        let candidates: Vec<usize> = (0..self.len())
            .filter(|&x| related(a, x) && related(b, x))
            .collect();
        candidates
            .iter()
            .copied()
            .find(|&x| candidates.iter().all(|&y| related(x, y)))
    }

    /// Longest-path layer of every node, measured from the minimal nodes.
    fn layers(&self) -> Vec<usize> {
        let m = self.len();
        let mut indegree = vec![0usize; m];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &(lo, hi) in &self.covers {
            out[lo].push(hi);
            indegree[hi] += 1;
        }
        let mut layer = vec![0usize; m];
        let mut queue: Vec<usize> = (0..m).filter(|&v| indegree[v] == 0).collect();
        while let Some(v) = queue.pop() {
            for &w in &out[v] {
                layer[w] = layer[w].max(layer[v] + 1);
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        layer
    }

    /// Renders the diagram in DOT, minimum elements at the bottom. Node
    /// labels are the coloring vectors; synchrony nodes are filled when
    /// requested. Output is deterministic.
    pub fn to_dot(&self, options: &DotOptions) -> String {
        let mut dot = String::new();
        dot.push_str("digraph hasse {\n");
        dot.push_str("  rankdir=BT;\n");
        dot.push_str("  node [shape=box, fontname=\"monospace\"];\n");
        dot.push_str("  edge [arrowhead=none];\n");
        for (idx, node) in self.nodes.iter().enumerate() {
            let style = if options.highlight_synchrony && node.is_synchrony() {
                ", style=filled, fillcolor=\"palegreen\""
            } else {
                ""
            };
            let _ = writeln!(dot, "  n{idx} [label=\"{node}\"{style}];");
        }
        for &(lo, hi) in &self.covers {
            let _ = writeln!(dot, "  n{lo} -> n{hi};");
        }
        if options.rank_layers && !self.is_empty() {
            let layers = self.layers();
            let max_layer = layers.iter().copied().max().unwrap_or(0);
            for level in 0..=max_layer {
                let members: Vec<String> = (0..self.len())
                    .filter(|&v| layers[v] == level)
                    .map(|v| format!("n{v};"))
                    .collect();
                if !members.is_empty() {
                    let _ = writeln!(dot, "  {{ rank=same; {} }}", members.join(" "));
                }
            }
        }
        dot.push_str("}\n");
        dot
    }
}

/// Rendering options for [`HasseDiagram::to_dot`].
#[derive(Debug, Clone)]
pub struct DotOptions {
    /// Fill nodes whose coloring vector is all-positive.
    pub highlight_synchrony: bool,
    /// Emit rank groups following the longest-path layering.
    pub rank_layers: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            highlight_synchrony: true,
            rank_layers: true,
        }
    }
}
