//! Optimal colorings for paths.
//!
//! `color_path(n)` colors the path `P_n` with `ceil(log2(n+1))` colors,
//! matching the lower bound, by recursing on `n = 2^k + l`: the prefix
//! `P_(2^k - 1)` keeps its optimal coloring, and the remaining `l + 1`
//! vertices are appended with a short case split on `l`. Three boundary
//! conditions are maintained so the recursion (and the cycle closure built
//! on top of it) can splice colorings together:
//!
//! 1. the first vertex has code `{1}`,
//! 2. the last vertex has code `{m}` where `m` is the palette size,
//! 3. no vertex other than the second-to-last has code `{1, m}`.

use thiserror::Error;

use crate::coloring::{verify, Coloring};
use crate::colorset::ColorSet;
use crate::generate;
use crate::graph::{lower_bound_for_order, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path coloring needs n >= 3, got {0}")]
    TooShort(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An optimal coloring of the canonical path `P_n` (edge `i` joins
/// vertices `i` and `i+1`), carrying the boundary conditions above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathColoring {
    coloring: Coloring,
}

impl PathColoring {
    #[inline]
    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn into_coloring(self) -> Coloring {
        self.coloring
    }

    /// Palette size `m = ceil(log2(n+1))`.
    #[inline]
    pub fn palette(&self) -> u32 {
        self.coloring.k()
    }

    /// Number of path vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.coloring.sets().len() + 1
    }
}

/// Colors `P_n` with the optimal `ceil(log2(n+1))` colors.
pub fn color_path(n: usize) -> Result<PathColoring, PathError> {
    if n < 3 {
        return Err(PathError::TooShort(n));
    }
    let m = lower_bound_for_order(n)?;
    let sets: Vec<ColorSet> = build(n).into_iter().map(ColorSet::from_mask).collect();
    let coloring = Coloring::new(m, sets).expect("construction stays within its palette");
    debug_assert!(check_boundary_conditions(&coloring, n, m));
    Ok(PathColoring { coloring })
}

/// Edge masks of the coloring of `P_n` in walk order, `n >= 3`.
fn build(n: usize) -> Vec<u64> {
    debug_assert!(n >= 3);
    if n == 3 {
        return vec![0b01, 0b10];
    }
    let k = n.ilog2();
    let l = n - (1usize << k);
    let bit_k = 1u64 << (k - 1);
    let bit_k1 = 1u64 << k;

    let mut out = build((1 << k) - 1);
    match l {
        0 => out.push(bit_k1),
        1 => out.extend([bit_k, bit_k1]),
        2 => out.extend([bit_k, 0b1 | bit_k1, bit_k1]),
        _ => {
            out.push(bit_k);
            let tail = build(l);
            // The tail path is replayed in reverse with the fresh color
            // added to every edge; its first edge must be {1} so the
            // second-to-last edge here lands on {1, k+1}.
            assert_eq!(tail[0], 0b1, "reversed tail must start from a {{1}} edge");
            out.extend(tail.iter().rev().map(|&s| s | bit_k1));
            out.push(bit_k1);
        }
    }
    debug_assert_eq!(out.len(), n - 1);
    out
}

/// Boundary conditions 1-3 plus overall validity; used in debug assertions
/// and directly by tests.
pub fn check_boundary_conditions(c: &Coloring, n: usize, m: u32) -> bool {
    let g = match generate::path(n) {
        Ok(g) => g,
        Err(_) => return false,
    };
    let rep = match verify(&g, c) {
        Ok(r) => r,
        Err(_) => return false,
    };
    if !rep.valid || c.k() != m {
        return false;
    }
    let one_m = ColorSet::single(1).with(m);
    rep.codes[0] == ColorSet::single(1)
        && rep.codes[n - 1] == ColorSet::single(m)
        && (0..n).all(|v| v == n - 2 || rep.codes[v] != one_m)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::generate;

    fn sets_of(pc: &PathColoring) -> Vec<ColorSet> {
        pc.coloring().sets().to_vec()
    }

    fn cs(colors: &[u32]) -> ColorSet {
        ColorSet::from_colors(colors)
    }

    // ------------------------------------------------------------------
    // Frozen small cases
    // ------------------------------------------------------------------

    #[test]
    fn p3_base_case() {
        let pc = color_path(3).unwrap();
        assert_eq!(pc.palette(), 2);
        assert_eq!(sets_of(&pc), vec![cs(&[1]), cs(&[2])]);
    }

    #[test]
    fn p4_appends_fresh_color() {
        let pc = color_path(4).unwrap();
        assert_eq!(pc.palette(), 3);
        assert_eq!(sets_of(&pc), vec![cs(&[1]), cs(&[2]), cs(&[3])]);
        let g = generate::path(4).unwrap();
        let rep = verify(&g, pc.coloring()).unwrap();
        assert_eq!(
            rep.codes,
            vec![cs(&[1]), cs(&[1, 2]), cs(&[2, 3]), cs(&[3])]
        );
    }

    #[test]
    fn p5_appends_k_then_fresh() {
        let pc = color_path(5).unwrap();
        assert_eq!(pc.palette(), 3);
        assert_eq!(sets_of(&pc), vec![cs(&[1]), cs(&[2]), cs(&[2]), cs(&[3])]);
    }

    #[test]
    fn p6_middle_edge_pairs_one_with_fresh() {
        let pc = color_path(6).unwrap();
        assert_eq!(
            sets_of(&pc),
            vec![cs(&[1]), cs(&[2]), cs(&[2]), cs(&[1, 3]), cs(&[3])]
        );
    }

    #[test]
    fn p7_replays_reversed_tail() {
        let pc = color_path(7).unwrap();
        assert_eq!(
            sets_of(&pc),
            vec![cs(&[1]), cs(&[2]), cs(&[2]), cs(&[2, 3]), cs(&[1, 3]), cs(&[3])]
        );
        // 7 = 2^3 - 1 vertices: the codes use every non-empty subset of
        // {1,2,3} exactly once.
        let g = generate::path(7).unwrap();
        let rep = verify(&g, pc.coloring()).unwrap();
        let mut codes = rep.codes.clone();
        codes.sort_unstable();
        let all: Vec<ColorSet> = (1..8u64).map(ColorSet::from_mask).collect();
        assert_eq!(codes, all);
    }

    #[test]
    fn too_short_rejected() {
        assert_eq!(color_path(2).unwrap_err(), PathError::TooShort(2));
    }

    // ------------------------------------------------------------------
    // Invariants across a sweep of sizes
    // ------------------------------------------------------------------

    #[test]
    fn boundary_conditions_hold_up_to_512() {
        for n in 3..=512 {
            let pc = color_path(n).unwrap();
            let m = lower_bound_for_order(n).unwrap();
            assert_eq!(pc.palette(), m, "palette off at n = {n}");
            assert!(
                check_boundary_conditions(pc.coloring(), n, m),
                "boundary conditions violated at n = {n}"
            );
        }
    }

    #[test]
    fn power_of_two_minus_one_exhausts_codes() {
        for k in 2..=8u32 {
            let n = (1usize << k) - 1;
            let pc = color_path(n).unwrap();
            let g = generate::path(n).unwrap();
            let mut codes = verify(&g, pc.coloring()).unwrap().codes;
            codes.sort_unstable();
            let all: Vec<ColorSet> = (1..(1u64 << k)).map(ColorSet::from_mask).collect();
            assert_eq!(codes, all, "codes must exhaust subsets at n = {n}");
        }
    }
}
