//! File ingestion: matrices, edge lists, and group generators.
//!
//! All formats are plain UTF-8 text, newline-delimited, with blank lines
//! and `#` comment lines skipped. Vertices and coloring positions are
//! 1-indexed in files and messages.

use std::path::Path;

use polydiag::symmetry::SignedSymmetry;
use polydiag::{Int, IntegerMatrix, Rational};

use crate::CliError;

/// Which matrix to build from an edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Adjacency,
    Laplacian,
}

fn read_lines(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

fn parse_token(token: &str, path: &Path) -> Result<Rational, CliError> {
    let bad = || {
        CliError::Data(format!(
            "unparseable matrix entry `{token}` in {}",
            path.display()
        ))
    };
    if let Some((num, den)) = token.split_once('/') {
        let num: Int = num.parse().map_err(|_| bad())?;
        let den: Int = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(CliError::Data(format!(
                "zero denominator in `{token}` in {}",
                path.display()
            )));
        }
        Ok(Rational::new(num, den))
    } else {
        let value: Int = token.parse().map_err(|_| bad())?;
        Ok(Rational::from(value))
    }
}

/// Reads a square matrix of whitespace-separated integers or `p/q`
/// rationals, one row per non-blank line. Rational entries are cleared by
/// the least common multiple of the denominators; the returned factor is 1
/// for plain integer input.
pub fn parse_matrix_file(path: &Path) -> Result<(IntegerMatrix, Int), CliError> {
    let lines = read_lines(path)?;
    if lines.is_empty() {
        return Err(CliError::Data(format!("{} has no rows", path.display())));
    }
    let n = lines.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for (idx, line) in lines.iter().enumerate() {
        let row = line
            .split_whitespace()
            .map(|tok| parse_token(tok, path))
            .collect::<Result<Vec<Rational>, CliError>>()?;
        if row.len() != n {
            return Err(CliError::Data(format!(
                "row {} of {} has {} entries, expected {n}",
                idx + 1,
                path.display(),
                row.len()
            )));
        }
        rows.push(row);
    }
    let entries: Vec<Rational> = rows.into_iter().flatten().collect();
    let rational = polydiag::RationalMatrix::new(n, n, entries)
        .map_err(|e| CliError::Data(e.to_string()))?;
    let (matrix, factor) = rational.clear_denominators().map_err(CliError::from)?;
    Ok((matrix, factor))
}

/// Reads an undirected edge list of 1-indexed `u v` lines, with an optional
/// `n <count>` header pinning the vertex count (otherwise the maximum index
/// is used). Returns the requested matrix and any duplicate-edge warnings.
pub fn parse_graph_file(
    path: &Path,
    kind: GraphKind,
) -> Result<(IntegerMatrix, Vec<String>), CliError> {
    let lines = read_lines(path)?;
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, line) in lines.iter().enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if idx == 0 && tokens.first() == Some(&"n") {
            let count = tokens
                .get(1)
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&c| c >= 1)
                .ok_or_else(|| {
                    CliError::Data(format!("bad vertex-count header in {}", path.display()))
                })?;
            if tokens.len() != 2 {
                return Err(CliError::Data(format!(
                    "bad vertex-count header in {}",
                    path.display()
                )));
            }
            declared = Some(count);
            continue;
        }
        let bad = || {
            CliError::Data(format!(
                "bad edge line `{line}` in {} (expected `u v`)",
                path.display()
            ))
        };
        if tokens.len() != 2 {
            return Err(bad());
        }
        let u: usize = tokens[0].parse().map_err(|_| bad())?;
        let v: usize = tokens[1].parse().map_err(|_| bad())?;
        if u == 0 || v == 0 {
            return Err(CliError::Data(format!(
                "vertex index 0 in {}; vertices are 1-indexed",
                path.display()
            )));
        }
        if u == v {
            return Err(CliError::Data(format!(
                "self-loop at vertex {u} in {}",
                path.display()
            )));
        }
        edges.push((u, v));
    }
    let seen_max = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let n = match declared {
        Some(count) => {
            if seen_max > count {
                return Err(CliError::Data(format!(
                    "vertex {seen_max} out of range in {} (header says {count})",
                    path.display()
                )));
            }
            count
        }
        None if seen_max == 0 => {
            return Err(CliError::Data(format!(
                "{} has no edges and no vertex-count header",
                path.display()
            )))
        }
        None => seen_max,
    };
    let mut adjacency = vec![vec![0 as Int; n]; n];
    let mut warnings = Vec::new();
    for (u, v) in edges {
        if adjacency[u - 1][v - 1] == 1 {
            warnings.push(format!("duplicate edge {u} {v} in {}", path.display()));
            continue;
        }
        adjacency[u - 1][v - 1] = 1;
        adjacency[v - 1][u - 1] = 1;
    }
    let matrix = match kind {
        GraphKind::Adjacency => adjacency,
        GraphKind::Laplacian => {
            let mut laplacian = vec![vec![0 as Int; n]; n];
            for i in 0..n {
                let degree: Int = adjacency[i].iter().sum();
                laplacian[i][i] = degree;
                for j in 0..n {
                    laplacian[i][j] -= adjacency[i][j];
                }
            }
            laplacian
        }
    };
    let matrix = IntegerMatrix::from_rows(matrix).map_err(CliError::from)?;
    Ok((matrix, warnings))
}

/// Reads signed permutations, one per line: `n` space-separated 1-indexed
/// images, optionally preceded by a `-` token for sign -1.
pub fn parse_generators_file(path: &Path, n: usize) -> Result<Vec<SignedSymmetry>, CliError> {
    let lines = read_lines(path)?;
    let mut generators = Vec::with_capacity(lines.len());
    for line in &lines {
        let mut tokens: Vec<&str> = line.split_whitespace().collect();
        let sign: Int = if tokens.first() == Some(&"-") {
            tokens.remove(0);
            -1
        } else {
            1
        };
        if tokens.len() != n {
            return Err(CliError::Data(format!(
                "generator line `{line}` in {} has {} images, expected {n}",
                path.display(),
                tokens.len()
            )));
        }
        let mut perm = Vec::with_capacity(n);
        for tok in tokens {
            let image: usize = tok.parse().map_err(|_| {
                CliError::Data(format!(
                    "bad image `{tok}` in generator file {}",
                    path.display()
                ))
            })?;
            if image == 0 || image > n {
                return Err(CliError::Data(format!(
                    "image {image} out of range 1..={n} in {}",
                    path.display()
                )));
            }
            perm.push(image - 1);
        }
        generators.push(SignedSymmetry::new(perm, sign).map_err(CliError::from)?);
    }
    Ok(generators)
}
