//! Generators for the graph families used throughout the crate.
//!
//! Canonical numbering conventions:
//! - paths and cycles walk `0, 1, ..., n-1` in order;
//! - complete binary trees use heap order (root 0, children of `i` at
//!   `2i+1` and `2i+2`);
//! - subdivided stars put the center at 0, then the branch midpoints, then
//!   their endpoints, then the length-1 leaves.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("{family} requires {requirement}, got {got}")]
    ParamOutOfRange {
        family: &'static str,
        requirement: &'static str,
        got: String,
    },
    #[error("random graph rejection sampling found no admissible graph in {0} attempts")]
    RejectionExhausted(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A family specification, mirroring the CLI grammar.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBinaryTree(u32),
    /// Branch lengths of a subdivided star; each entry is 1 or 2.
    OneStar(Vec<u8>),
    Random {
        n: usize,
        p: f64,
        seed: u64,
    },
}

pub fn generate(family: &Family) -> Result<Graph, GenerateError> {
    match family {
        Family::Path(n) => path(*n),
        Family::Cycle(n) => cycle(*n),
        Family::Complete(n) => complete(*n),
        Family::CompleteBinaryTree(h) => complete_binary_tree(*h),
        Family::OneStar(lengths) => one_star(lengths),
        Family::Random { n, p, seed } => random(*n, *p, *seed),
    }
}

/// Path on `n >= 1` vertices: edges `(i, i+1)`.
pub fn path(n: usize) -> Result<Graph, GenerateError> {
    if n < 1 {
        return Err(param_err("path", "n >= 1", n.to_string()));
    }
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Ok(Graph::new(n, &edges)?)
}

/// Cycle on `n >= 3` vertices: path edges plus the closing `(0, n-1)`.
pub fn cycle(n: usize) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(param_err("cycle", "n >= 3", n.to_string()));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    Ok(Graph::new(n, &edges)?)
}

/// Complete graph on `n >= 1` vertices.
pub fn complete(n: usize) -> Result<Graph, GenerateError> {
    if n < 1 {
        return Err(param_err("complete", "n >= 1", n.to_string()));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Complete binary tree of height `h >= 0` in heap numbering:
/// `2^(h+1) - 1` vertices, every internal vertex with exactly two children,
/// all leaves at depth `h`.
pub fn complete_binary_tree(h: u32) -> Result<Graph, GenerateError> {
    if h >= 62 {
        return Err(param_err("cbt", "h < 62", h.to_string()));
    }
    let n = (1usize << (h + 1)) - 1;
    let internal = (1usize << h) - 1;
    let mut edges = Vec::with_capacity(n - 1);
    for i in 0..internal {
        edges.push((i, 2 * i + 1));
        edges.push((i, 2 * i + 2));
    }
    Ok(Graph::new(n, &edges)?)
}

/// Subdivided star from a list of branch lengths (each 1 or 2), at least
/// two branches. Numbering: center 0, then the midpoints of the length-2
/// branches, then their endpoints, then the length-1 leaves.
pub fn one_star(lengths: &[u8]) -> Result<Graph, GenerateError> {
    if lengths.len() < 2 {
        return Err(param_err(
            "star",
            "at least 2 branches",
            lengths.len().to_string(),
        ));
    }
    if let Some(&bad) = lengths.iter().find(|&&l| l != 1 && l != 2) {
        return Err(param_err("star", "branch lengths in {1,2}", bad.to_string()));
    }
    let x = lengths.iter().filter(|&&l| l == 2).count();
    let z = lengths.len() - x;
    let n = 1 + 2 * x + z;
    let mut edges = Vec::with_capacity(n - 1);
    for i in 0..x {
        let mid = 1 + i;
        let end = 1 + x + i;
        edges.push((0, mid));
        edges.push((mid, end));
    }
    for j in 0..z {
        edges.push((0, 1 + 2 * x + j));
    }
    Ok(Graph::new(n, &edges)?)
}

const REJECTION_CAP: u32 = 10_000;

/// Erdos-Renyi `G(n, p)` rejection-sampled until admissible (every
/// component has >= 3 vertices). Deterministic for a fixed seed.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(param_err("random", "n >= 3", n.to_string()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(param_err("random", "p in [0,1]", p.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REJECTION_CAP {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges)?;
        if g.is_admissible() {
            return Ok(g);
        }
    }
    Err(GenerateError::RejectionExhausted(REJECTION_CAP))
}

fn param_err(family: &'static str, requirement: &'static str, got: String) -> GenerateError {
    GenerateError::ParamOutOfRange {
        family,
        requirement,
        got,
    }
}

// ============================================================================
// Tests
// ============================================================================
