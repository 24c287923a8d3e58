//! Optimal colorings of complete binary trees.
//!
//! `T_h` is the complete binary tree of height `h` in heap numbering: root
//! 0, children of `i` at `2i + 1` and `2i + 2`, so `2^{h+1} - 1` vertices.
//! Its codes can exhaust every non-empty subset of `{1, ..., h+1}`, which
//! pins the palette to the lower bound exactly.
//!
//! The construction doubles upward from `T_1` (edges `{1}` and `{2}`). To
//! build height `H` from two copies of height `H - 1`:
//!
//! - the left copy keeps its labels; the right copy adds color `H + 1` to
//!   every edge; the new root edges are `{H}` left and `{H, H+1}` right.
//!   The left root's code `{H-1, H}` already contains `H`, so no left code
//!   moves, and right codes are old codes plus `H + 1`.
//! - counting codes, `{H, H+1}` now appears twice (new root, plus the
//!   right image of the old code-`{H}` vertex) while `{H+1}` is missing.
//!   The fix-up removes `H` from every edge at the unique non-root vertex
//!   coded `{H, H+1}`, turning its code into `{H+1}`.
//!
//! The fix-up vertex is guaranteed to sit inside the right copy's own
//! primed subtree with all neighbors internal; both facts are asserted at
//! runtime rather than trusted, as is the claim that no other code moves.

use thiserror::Error;

use crate::coloring::Coloring;
use crate::colorset::ColorSet;
use crate::generate;

/// Heights above this would allocate gigabytes; the construction is linear
/// but the tree is not.
pub const MAX_CBT_HEIGHT: u32 = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CbtError {
    #[error("tree height must be at least 1, got {0}")]
    TooShort(u32),
    #[error("tree height {0} exceeds the supported maximum {MAX_CBT_HEIGHT}")]
    TooTall(u32),
}

/// A valid coloring of the canonical `T_h` meeting the lower bound, plus
/// the record of which subtrees carry the doubling colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbtColoring {
    coloring: Coloring,
    h: u32,
    primed_subtree: Vec<usize>,
}

impl CbtColoring {
    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn into_coloring(self) -> Coloring {
        self.coloring
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn palette(&self) -> u32 {
        self.coloring.k()
    }

    pub fn n(&self) -> usize {
        (1usize << (self.h + 1)) - 1
    }

    /// Roots of the primed copies, outermost first: every edge strictly
    /// inside the subtree at entry `i` carries color `h + 1 - i`. Entry 0
    /// is the right copy of the final doubling, whose edges all carry the
    /// top color `h + 1`.
    pub fn primed_subtree(&self) -> &[usize] {
        &self.primed_subtree
    }
}

/// Colors the canonical complete binary tree of height `h >= 1` with
/// palette `h + 1`; the codes exhaust the non-empty subsets of
/// `{1, ..., h+1}`.
pub fn color_cbt(h: u32) -> Result<CbtColoring, CbtError> {
    if h < 1 {
        return Err(CbtError::TooShort(h));
    }
    if h > MAX_CBT_HEIGHT {
        return Err(CbtError::TooTall(h));
    }

    // label[v] is the set on the edge between v and its parent.
    let mut label: Vec<u64> = vec![0, 0b01, 0b10];
    for new_height in 2..=h {
        label = double_tree(&label, new_height);
    }

    let n = label.len();
    let g = generate::complete_binary_tree(h).expect("height fits the generator");
    let mut sets = vec![ColorSet::EMPTY; g.m()];
    for v in 1..n {
        let parent = (v - 1) / 2;
        let e = g.edge_index(parent, v).expect("tree edge exists");
        sets[e] = ColorSet::from_mask(label[v]);
    }
    let coloring = Coloring::new(h + 1, sets).expect("labels confined to the palette");

    let primed_subtree: Vec<usize> = (1..=h as usize).map(|i| 1usize << i).collect();

    debug_assert!(crate::coloring::verify(&g, &coloring)
        .map(|r| r.valid)
        .unwrap_or(false));
    debug_assert_eq!(
        crate::coloring::code(&g, &coloring, 0),
        ColorSet::single(h).with(h + 1),
        "root code must be the top color pair"
    );
    debug_assert!(primed_edges_hold(&label, h, &primed_subtree));

    Ok(CbtColoring {
        coloring,
        h,
        primed_subtree,
    })
}

/// One doubling step on parent-edge labels: input is `T_{H-1}`, output is
/// `T_H` colored with `{1, ..., H+1}`, fix-up applied and checked.
fn double_tree(old: &[u64], new_height: u32) -> Vec<u64> {
    let big_h = new_height;
    let old_n = old.len();
    let n = 2 * old_n + 1;
    let h_bit = 1u64 << (big_h - 1);
    let top_bit = 1u64 << big_h;

    let mut label = vec![0u64; n];
    label[1] = h_bit;
    label[2] = h_bit | top_bit;
    for x in 1..old_n {
        let d = (x as u64 + 1).ilog2();
        label[x + (1usize << d)] = old[x];
        label[x + (1usize << (d + 1))] = old[x] | top_bit;
    }

    let before = codes_of(&label);

    // Locate the fix-up vertex: the one non-root vertex whose code is the
    // top color pair. The root always has that code and is exempt.
    let target = h_bit | top_bit;
    let mut fixup = None;
    for v in 1..n {
        if before[v] == target {
            assert!(fixup.is_none(), "fix-up vertex must be unique");
            fixup = Some(v);
        }
    }
    let u = fixup.expect("fix-up vertex exists");

    // It must sit inside the right copy's own primed subtree (rooted at
    // vertex 6) and all of its neighbors must be internal vertices, so
    // removing a color from its edges cannot strip a leaf's whole code.
    let mut w = u;
    while w > 6 {
        w = (w - 1) / 2;
    }
    assert_eq!(w, 6, "fix-up vertex must lie in the primed right subtree");
    let first_leaf = n / 2;
    assert!(u < n, "fix-up vertex in range");
    for c in [2 * u + 1, 2 * u + 2] {
        if c < n {
            assert!(c < first_leaf, "fix-up child must be internal");
        }
    }

    label[u] &= !h_bit;
    assert_ne!(label[u], 0, "fix-up must not empty the parent edge");
    for c in [2 * u + 1, 2 * u + 2] {
        if c < n {
            label[c] &= !h_bit;
            assert_ne!(label[c], 0, "fix-up must not empty a child edge");
        }
    }

    let after = codes_of(&label);
    assert_eq!(after[u], top_bit, "fix-up vertex code becomes the top color");
    for v in 0..n {
        assert!(
            v == u || after[v] == before[v],
            "fix-up must only move the fix-up vertex's code"
        );
    }
    label
}

fn codes_of(label: &[u64]) -> Vec<u64> {
    let n = label.len();
    let mut codes = label.to_vec();
    codes[0] = 0;
    for v in 0..n {
        for c in [2 * v + 1, 2 * v + 2] {
            if c < n {
                codes[v] |= label[c];
            }
        }
    }
    codes
}

/// Every edge strictly inside the subtree at `primed[i]` carries color
/// `h + 1 - i`.
fn primed_edges_hold(label: &[u64], h: u32, primed: &[usize]) -> bool {
    let n = label.len();
    for (i, &root) in primed.iter().enumerate() {
        let bit = 1u64 << (h - i as u32);
        let mut frontier = vec![root];
        while let Some(v) = frontier.pop() {
            for c in [2 * v + 1, 2 * v + 2] {
                if c < n {
                    if label[c] & bit == 0 {
                        return false;
                    }
                    frontier.push(c);
                }
            }
        }
    }
    true
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{code, verify};
    use crate::colorset::ColorSet;
    use crate::generate;
    use crate::graph::lower_bound;

    fn s(colors: &[u32]) -> ColorSet {
        ColorSet::from_colors(colors)
    }

    #[test]
    fn t1_frozen() {
        let cbt = color_cbt(1).unwrap();
        assert_eq!(cbt.palette(), 2);
        // Canonical edges: (0,1), (0,2).
        assert_eq!(cbt.coloring().sets(), &[s(&[1]), s(&[2])]);
        assert_eq!(cbt.primed_subtree(), &[2]);
    }

    #[test]
    fn t2_frozen() {
        let cbt = color_cbt(2).unwrap();
        assert_eq!(cbt.palette(), 3);
        // Canonical edges: (0,1), (0,2), (1,3), (1,4), (2,5), (2,6).
        assert_eq!(
            cbt.coloring().sets(),
            &[s(&[2]), s(&[2, 3]), s(&[1]), s(&[2]), s(&[1, 3]), s(&[3])]
        );
        let g = generate::complete_binary_tree(2).unwrap();
        let codes: Vec<ColorSet> = (0..7).map(|v| code(&g, cbt.coloring(), v)).collect();
        assert_eq!(
            codes,
            vec![
                s(&[2, 3]),
                s(&[1, 2]),
                s(&[1, 2, 3]),
                s(&[1]),
                s(&[2]),
                s(&[1, 3]),
                s(&[3]),
            ]
        );
        assert_eq!(cbt.primed_subtree(), &[2, 4]);
    }

    #[test]
    fn codes_exhaust_nonempty_subsets() {
        for h in 1..=10u32 {
            let cbt = color_cbt(h).unwrap();
            let g = generate::complete_binary_tree(h).unwrap();
            let mut codes: Vec<u64> = (0..g.n())
                .map(|v| code(&g, cbt.coloring(), v).mask())
                .collect();
            codes.sort_unstable();
            let want: Vec<u64> = (1..(1u64 << (h + 1))).collect();
            assert_eq!(codes, want, "height {h}");
        }
    }

    #[test]
    fn valid_and_optimal_up_to_13() {
        for h in 1..=13u32 {
            let cbt = color_cbt(h).unwrap();
            let g = generate::complete_binary_tree(h).unwrap();
            assert!(verify(&g, cbt.coloring()).unwrap().valid, "height {h}");
            assert_eq!(cbt.palette(), lower_bound(&g).unwrap(), "height {h}");
            assert_eq!(cbt.palette(), h + 1);
            assert_eq!(cbt.n(), g.n());
        }
    }

    #[test]
    fn root_code_is_top_pair() {
        for h in 1..=8u32 {
            let cbt = color_cbt(h).unwrap();
            let g = generate::complete_binary_tree(h).unwrap();
            assert_eq!(code(&g, cbt.coloring(), 0), s(&[h, h + 1]));
        }
    }

    #[test]
    fn height_bounds_enforced() {
        assert_eq!(color_cbt(0).unwrap_err(), CbtError::TooShort(0));
        assert_eq!(
            color_cbt(MAX_CBT_HEIGHT + 1).unwrap_err(),
            CbtError::TooTall(MAX_CBT_HEIGHT + 1)
        );
    }
}
