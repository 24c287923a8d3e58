//! Shape detection for the `color` command's strategy dispatch.
//!
//! The construction routines color canonical family layouts (path edges
//! `(i, i+1)`, cycle closing edge `(0, n-1)`, heap-ordered binary trees).
//! Arbitrary input graphs may use any vertex numbering, so each detector
//! returns the isomorphism as `order[i] = host vertex at canonical index
//! i`, or `None` when the graph does not have the family's shape. The
//! families are rigid, so cheap degree and traversal checks decide
//! membership; no general isomorphism search is needed.

use uvd_core::coloring::Coloring;
use uvd_core::colorset::ColorSet;
use uvd_core::graph::Graph;

/// Detects a path: two endpoints of degree 1 joined by a chain. The walk
/// starts at the smaller endpoint.
pub fn detect_path(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 || g.m() != n - 1 {
        return None;
    }
    let ends: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    if ends.len() != 2 || (0..n).any(|v| g.degree(v) > 2 || g.degree(v) == 0) {
        return None;
    }
    walk_from(g, ends[0], n)
}

/// Detects a cycle: connected, every vertex of degree 2. The walk starts
/// at vertex 0 and turns toward its smaller neighbor.
pub fn detect_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 || g.m() != n || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let order = walk_from(g, 0, n)?;
    // A second component would have closed the walk early; still, the
    // last vertex must reconnect to the start.
    g.edge_index(order[n - 1], 0).map(|_| order)
}

/// Follows the unique non-returning neighbor until `want` vertices are
/// collected or the walk gets stuck.
fn walk_from(g: &Graph, start: usize, want: usize) -> Option<Vec<usize>> {
    let mut order = Vec::with_capacity(want);
    order.push(start);
    let (mut prev, mut cur) = (usize::MAX, start);
    while order.len() < want {
        let next = g
            .incident(cur)
            .iter()
            .map(|&e| g.other_endpoint(e, cur))
            .filter(|&w| w != prev)
            .min()?;
        if next == start {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Detects a complete binary tree of height `h >= 1` in heap order: the
/// root is the unique degree-2 vertex, every internal vertex has exactly
/// two children, and all leaves sit at the same depth. Children are
/// assigned smaller-id-first, which is an isomorphism because sibling
/// subtrees of a complete tree are interchangeable.
pub fn detect_cbt(g: &Graph) -> Option<(Vec<usize>, u32)> {
    let n = g.n();
    if n < 3 || g.m() != n - 1 || !(n + 1).is_power_of_two() {
        return None;
    }
    let h = (n + 1).ilog2() - 1;
    let leaves = (n + 1) / 2;
    let mut by_degree = [0usize; 4];
    for v in 0..n {
        let d = g.degree(v);
        if d == 0 || d > 3 {
            return None;
        }
        by_degree[d] += 1;
    }
    if by_degree[1] != leaves || by_degree[2] != 1 || by_degree[3] != n - leaves - 1 {
        return None;
    }

    let root = (0..n).find(|&v| g.degree(v) == 2).expect("counted above");
    let first_leaf = n / 2;
    let mut order = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    order[0] = root;
    taken[root] = true;
    for i in 0..n {
        let v = order[i];
        let mut kids: Vec<usize> = g
            .incident(v)
            .iter()
            .map(|&e| g.other_endpoint(e, v))
            .filter(|&w| !taken[w])
            .collect();
        kids.sort_unstable();
        if i < first_leaf {
            if kids.len() != 2 {
                return None;
            }
            order[2 * i + 1] = kids[0];
            order[2 * i + 2] = kids[1];
            taken[kids[0]] = true;
            taken[kids[1]] = true;
        } else if !kids.is_empty() {
            return None;
        }
    }
    Some((order, h))
}

/// Transfers a coloring of the canonical layout onto the host graph via
/// the detected vertex order.
pub fn remap_coloring(
    g: &Graph,
    canon: &Graph,
    coloring: &Coloring,
    order: &[usize],
) -> Coloring {
    let mut sets = vec![ColorSet::EMPTY; g.m()];
    for (e, &(a, b)) in canon.edges().iter().enumerate() {
        let idx = g
            .edge_index(order[a], order[b])
            .expect("detected order maps canonical edges onto host edges");
        sets[idx] = coloring.set(e);
    }
    Coloring::new(coloring.k(), sets).expect("palette and labels carry over")
}
