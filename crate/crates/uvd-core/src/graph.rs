//! Simple undirected graphs with dense vertex indices.
//!
//! Vertices are `0..n`. Edges are stored canonically: each pair as
//! `(min, max)`, the list sorted and deduplicated, so an edge index is a
//! stable handle shared by colorings, file formats and reports.

use thiserror::Error;

use crate::colorset::MAX_COLORS;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("graph is inadmissible: component of vertex {0} has fewer than 3 vertices")]
    Inadmissible(usize),
    #[error("lower bound exceeds the {MAX_COLORS}-color palette cap for n = {0}")]
    PaletteOverflow(usize),
}

/// An undirected graph on vertices `0..n` with canonical edge storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Incident edge indices per vertex.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs are normalized to
    /// `(min, max)`, sorted and deduplicated. Loops and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(i);
            adj[v].push(i);
        }
        Ok(Graph { n, edges, adj })
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline(always)]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline(always)]
    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    /// Incident edge indices of `v`.
    #[inline(always)]
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Index of edge `(u, v)` in canonical storage, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Neighbor of `v` across edge `i`. Panics if `v` is not an endpoint.
    #[inline]
    pub fn other_endpoint(&self, i: usize, v: usize) -> usize {
        let (a, b) = self.edges[i];
        debug_assert!(v == a || v == b);
        if v == a {
            b
        } else {
            a
        }
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &e in &self.adj[v] {
                    let w = self.other_endpoint(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True if every connected component has at least 3 vertices.
    ///
    /// Smaller components cannot be colored: an isolated vertex has the
    /// empty code, and the two endpoints of an isolated edge always share
    /// their code.
    pub fn is_admissible(&self) -> bool {
        self.components().iter().all(|c| c.len() >= 3)
    }
}

/// Smallest `k` with `2^k - 1 >= n`: no graph on `n` vertices can be colored
/// with fewer colors, because the `n` vertex codes must be distinct
/// non-empty subsets of the palette.
///
/// Errors on inadmissible graphs (no coloring exists at any palette size)
/// and when `k` would exceed the 64-color cap.
pub fn lower_bound(g: &Graph) -> Result<u32, GraphError> {
    if let Some(comp) = g.components().iter().find(|c| c.len() < 3) {
        return Err(GraphError::Inadmissible(comp[0]));
    }
    lower_bound_for_order(g.n())
}

/// `lower_bound` as a pure function of the vertex count.
pub fn lower_bound_for_order(n: usize) -> Result<u32, GraphError> {
    debug_assert!(n >= 3);
    let mut k = 0u32;
    while k < MAX_COLORS && ((1u128 << k) - 1) < n as u128 {
        k += 1;
    }
    if ((1u128 << k) - 1) < n as u128 {
        return Err(GraphError::PaletteOverflow(n));
    }
    Ok(k)
}

// ============================================================================
// Tests
// ============================================================================
