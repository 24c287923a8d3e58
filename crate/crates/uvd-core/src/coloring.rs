//! Edge colorings, vertex codes, and the validity verifier.
//!
//! A coloring assigns a `ColorSet` to every edge. The code of a vertex is
//! the union of the sets on its incident edges; a coloring is valid when
//! all codes are pairwise distinct and no edge carries the empty set. The
//! verifier here is the oracle every construction in this crate is checked
//! against.

use thiserror::Error;

use crate::colorset::{ColorSet, MAX_COLORS};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("palette size {0} exceeds the {MAX_COLORS}-color cap")]
    PaletteTooLarge(u32),
    #[error("edge {edge} uses color {color} above the declared palette {k}")]
    ColorAbovePalette { edge: usize, color: u32, k: u32 },
    #[error("coloring has {got} edge sets but the graph has {want} edges")]
    LengthMismatch { got: usize, want: usize },
}

/// A total assignment of color sets to edges, indexed like `Graph::edges`.
///
/// `k` is the declared palette size; every set is confined to `{1..=k}`.
/// Empty sets are representable so the verifier can report them, but they
/// are never valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    k: u32,
    sets: Vec<ColorSet>,
}

impl Coloring {
    pub fn new(k: u32, sets: Vec<ColorSet>) -> Result<Coloring, ColoringError> {
        if k > MAX_COLORS {
            return Err(ColoringError::PaletteTooLarge(k));
        }
        let cap = ColorSet::first_k(k);
        for (i, s) in sets.iter().enumerate() {
            if !s.is_subset_of(cap) {
                return Err(ColoringError::ColorAbovePalette {
                    edge: i,
                    color: s.max_color(),
                    k,
                });
            }
        }
        Ok(Coloring { k, sets })
    }

    /// Declared palette size.
    #[inline(always)]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline(always)]
    pub fn sets(&self) -> &[ColorSet] {
        &self.sets
    }

    #[inline(always)]
    pub fn set(&self, edge: usize) -> ColorSet {
        self.sets[edge]
    }

    /// Largest color actually appearing on an edge.
    pub fn max_color_used(&self) -> u32 {
        self.sets.iter().map(|s| s.max_color()).max().unwrap_or(0)
    }
}

/// Union of the sets on the edges incident to `u`. Isolated vertices get
/// the empty set.
pub fn code(g: &Graph, c: &Coloring, u: usize) -> ColorSet {
    g.incident(u)
        .iter()
        .fold(ColorSet::EMPTY, |acc, &e| acc.union(c.set(e)))
}

/// Outcome of checking a coloring against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    /// Lexicographically first pair of vertices sharing a code.
    pub clash: Option<(usize, usize)>,
    /// First edge index carrying the empty set.
    pub empty_edge: Option<usize>,
    /// Code of every vertex, indexed by vertex.
    pub codes: Vec<ColorSet>,
}

/// Checks that every edge set is non-empty and all vertex codes are
/// pairwise distinct. Errors only on a length mismatch; a wrong coloring
/// is a report, not an error.
pub fn verify(g: &Graph, c: &Coloring) -> Result<VerifyReport, ColoringError> {
    if c.sets().len() != g.m() {
        return Err(ColoringError::LengthMismatch {
            got: c.sets().len(),
            want: g.m(),
        });
    }
    let empty_edge = c.sets().iter().position(|s| s.is_empty());
    let codes: Vec<ColorSet> = (0..g.n()).map(|u| code(g, c, u)).collect();
    let clash = first_clash(&codes);
    Ok(VerifyReport {
        valid: empty_edge.is_none() && clash.is_none(),
        clash,
        empty_edge,
        codes,
    })
}

/// Lexicographically first `(u, v)`, `u < v`, with equal codes.
fn first_clash(codes: &[ColorSet]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..codes.len()).collect();
    order.sort_unstable_by_key(|&v| (codes[v], v));
    // Scan sorted runs of equal codes; among duplicated codes the first
    // clash pair is (min vertex of the best run, its second-smallest).
    let mut best: Option<(usize, usize)> = None;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && codes[order[j]] == codes[order[i]] {
            j += 1;
        }
        if j - i >= 2 {
            let pair = (order[i], order[i + 1]);
            if best.is_none() || pair < best.unwrap() {
                best = Some(pair);
            }
        }
        i = j;
    }
    best
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn sets(raw: &[&[u32]]) -> Vec<ColorSet> {
        raw.iter().map(|cs| ColorSet::from_colors(cs)).collect()
    }

    // ------------------------------------------------------------------
    // Coloring construction
    // ------------------------------------------------------------------

    #[test]
    fn palette_cap_enforced() {
        assert_eq!(
            Coloring::new(65, vec![]).unwrap_err(),
            ColoringError::PaletteTooLarge(65)
        );
    }

    #[test]
    fn color_above_palette_rejected() {
        let err = Coloring::new(2, sets(&[&[1], &[3]])).unwrap_err();
        assert_eq!(
            err,
            ColoringError::ColorAbovePalette {
                edge: 1,
                color: 3,
                k: 2
            }
        );
    }

    // ------------------------------------------------------------------
    // Codes
    // ------------------------------------------------------------------

    #[test]
    fn codes_on_colored_path3() {
        // Edges {1}, {2} put code {1} on one end, {2} on the other, and
        // the union {1,2} on the middle vertex.
        let g = path3();
        let c = Coloring::new(2, sets(&[&[1], &[2]])).unwrap();
        assert_eq!(code(&g, &c, 0), ColorSet::single(1));
        assert_eq!(code(&g, &c, 1), ColorSet::from_colors(&[1, 2]));
        assert_eq!(code(&g, &c, 2), ColorSet::single(2));
    }

    #[test]
    fn isolated_vertex_has_empty_code() {
        let g = Graph::new(4, &[(0, 1), (1, 2)]).unwrap();
        let c = Coloring::new(2, sets(&[&[1], &[2]])).unwrap();
        assert_eq!(code(&g, &c, 3), ColorSet::EMPTY);
    }

    // ------------------------------------------------------------------
    // Verifier
    // ------------------------------------------------------------------

    #[test]
    fn valid_path3_report() {
        let g = path3();
        let c = Coloring::new(2, sets(&[&[1], &[2]])).unwrap();
        let rep = verify(&g, &c).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.clash, None);
        assert_eq!(rep.empty_edge, None);
    }

    #[test]
    fn clash_reported_lexicographically_first() {
        // Both edges {1}: ends share code {1}, middle is {1} as well; the
        // first clashing pair must be (0, 1), not (0, 2).
        let g = path3();
        let c = Coloring::new(1, sets(&[&[1], &[1]])).unwrap();
        let rep = verify(&g, &c).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.clash, Some((0, 1)));
    }

    #[test]
    fn empty_edge_reported() {
        let g = path3();
        let c = Coloring::new(2, vec![ColorSet::single(1), ColorSet::EMPTY]).unwrap();
        let rep = verify(&g, &c).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.empty_edge, Some(1));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let g = path3();
        let c = Coloring::new(2, sets(&[&[1]])).unwrap();
        assert_eq!(
            verify(&g, &c).unwrap_err(),
            ColoringError::LengthMismatch { got: 1, want: 2 }
        );
    }

    #[test]
    fn two_isolated_vertices_clash_on_empty_code() {
        let g = Graph::new(5, &[(0, 1), (1, 2)]).unwrap();
        let c = Coloring::new(2, sets(&[&[1], &[2]])).unwrap();
        let rep = verify(&g, &c).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.clash, Some((3, 4)));
    }

    #[test]
    fn verdict_independent_of_input_edge_order() {
        // The same edge set handed over in a different order builds the
        // same canonical graph, so the verdict cannot change.
        let edges = [(0, 1), (1, 2), (2, 3), (0, 3)];
        let mut shuffled = edges;
        shuffled.reverse();
        let g1 = Graph::new(4, &edges).unwrap();
        let g2 = Graph::new(4, &shuffled).unwrap();
        assert_eq!(g1, g2);
        let c = Coloring::new(3, sets(&[&[1], &[3], &[2], &[2]])).unwrap();
        assert_eq!(verify(&g1, &c).unwrap(), verify(&g2, &c).unwrap());
    }
}
