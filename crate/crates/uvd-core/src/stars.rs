//! Star-forest decomposition and the general coloring pipeline.
//!
//! Any admissible graph can be colored with at most two colors above the
//! lower bound by a four-stage pipeline:
//!
//! 1. `decompose_1stars` finds a spanning forest of 1-stars (a center with
//!    at least two branches, each branch a single edge or a two-edge arm)
//!    inside each component, via tree dynamic programming on a DFS
//!    spanning tree. The spanning tree is itself an admissible graph, so a
//!    spanning 1-star forest of it always exists; the DP is a complete
//!    decision procedure over tree edges and so never fails. A brute-force
//!    fallback for tiny components is kept as a safety net.
//! 2. `color_1star` colors each star optimally with distinct strict
//!    subsets, giving the center the full palette as its code.
//! 3. `combine_disjoint` merges the colored stars: equal-tag pieces merge
//!    for free via a fresh color on one side, then the survivors fold in
//!    increasing size, costing at most one color over the lower bound of
//!    the union.
//! 4. `lift_to_supergraph` restores the edges the forest dropped, all
//!    labeled with one more fresh color, leaving every code intact below
//!    the new color.

use std::collections::HashMap;

use thiserror::Error;

use crate::coloring::{code, verify, Coloring, ColoringError};
use crate::colorset::ColorSet;
use crate::graph::{lower_bound_for_order, Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StarsError {
    #[error("a 1-star needs at least two branches")]
    TooFewBranches,
    #[error("vertex {0} appears twice in one star")]
    DuplicateVertex(usize),
    #[error("star forest does not cover vertex {0} exactly once")]
    NotPartition(usize),
    #[error("edge ({0}, {1}) is not in the host graph")]
    MissingHostEdge(usize, usize),
    #[error("no spanning 1-star forest found; every admissible graph has one, so this is a bug")]
    DecompositionFailed,
    #[error("pieces are not vertex-disjoint: vertex {0} repeats")]
    Overlap(usize),
    #[error("piece has duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has no incident edge in its piece")]
    IsolatedVertex(usize),
    #[error("piece coloring does not verify")]
    InvalidPiece,
    #[error("k-graph tags differ: {0} vs {1}")]
    TagMismatch(u32, u32),
    #[error("piece is not optimally colored: palette {got}, lower bound {want}")]
    NotOptimal { got: u32, want: u32 },
    #[error("not an edge-subgraph of the host")]
    NotSubgraph,
    #[error("nothing to combine")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

// ============================================================================
// 1-stars and star forests
// ============================================================================

/// One branch of a 1-star: a single edge to a leaf, or a two-edge arm
/// through a mid vertex to an end vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Leaf(usize),
    Arm { mid: usize, end: usize },
}

/// A 1-star in host-vertex coordinates: a center with at least two
/// branches, all vertices distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneStar {
    center: usize,
    arms: Vec<(usize, usize)>,
    leaves: Vec<usize>,
}

impl OneStar {
    pub fn new(center: usize, branches: &[Branch]) -> Result<Self, StarsError> {
        if branches.len() < 2 {
            return Err(StarsError::TooFewBranches);
        }
        let mut arms = Vec::new();
        let mut leaves = Vec::new();
        for b in branches {
            match *b {
                Branch::Leaf(v) => leaves.push(v),
                Branch::Arm { mid, end } => arms.push((mid, end)),
            }
        }
        arms.sort_unstable();
        leaves.sort_unstable();
        let star = OneStar {
            center,
            arms,
            leaves,
        };
        let mut seen = std::collections::HashSet::new();
        for v in star.vertices() {
            if !seen.insert(v) {
                return Err(StarsError::DuplicateVertex(v));
            }
        }
        Ok(star)
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Two-edge branches as (mid, end) pairs, sorted by mid.
    pub fn arms(&self) -> &[(usize, usize)] {
        &self.arms
    }

    /// One-edge branches, sorted.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn n(&self) -> usize {
        1 + 2 * self.arms.len() + self.leaves.len()
    }

    /// Host vertices in the star's canonical order: center, arm mids, arm
    /// ends, then leaves.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = Vec::with_capacity(self.n());
        vs.push(self.center);
        vs.extend(self.arms.iter().map(|&(mid, _)| mid));
        vs.extend(self.arms.iter().map(|&(_, end)| end));
        vs.extend(self.leaves.iter().copied());
        vs
    }

    /// Host edges: (center, mid) per arm, (mid, end) per arm, then
    /// (center, leaf) per leaf.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::with_capacity(self.n() - 1);
        es.extend(self.arms.iter().map(|&(mid, _)| (self.center, mid)));
        es.extend(self.arms.iter().copied());
        es.extend(self.leaves.iter().map(|&z| (self.center, z)));
        es
    }
}

/// A spanning forest of 1-stars: the stars' vertex sets partition the host
/// graph's vertices and every star edge is a host edge. Construction
/// validates both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarForest {
    stars: Vec<OneStar>,
    host_n: usize,
}

impl StarForest {
    pub fn new(host: &Graph, stars: Vec<OneStar>) -> Result<Self, StarsError> {
        let mut covered = vec![false; host.n()];
        for star in &stars {
            for v in star.vertices() {
                if v >= host.n() || covered[v] {
                    return Err(StarsError::NotPartition(v));
                }
                covered[v] = true;
            }
            for (u, v) in star.edges() {
                if host.edge_index(u, v).is_none() {
                    return Err(StarsError::MissingHostEdge(u.min(v), u.max(v)));
                }
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(StarsError::NotPartition(v));
        }
        Ok(StarForest {
            stars,
            host_n: host.n(),
        })
    }

    pub fn stars(&self) -> &[OneStar] {
        &self.stars
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }
}

// ============================================================================
// Decomposition (spanning 1-star forest)
// ============================================================================

/// Finds a spanning 1-star forest of an admissible graph, working per
/// component on a DFS spanning tree.
pub fn decompose_1stars(g: &Graph) -> Result<StarForest, StarsError> {
    let mut stars = Vec::new();
    for comp in g.components() {
        if comp.len() < 3 {
            return Err(StarsError::Graph(GraphError::Inadmissible(comp[0])));
        }
        match decompose_component(g, &comp) {
            Some(mut s) => stars.append(&mut s),
            None => {
                debug_assert!(false, "tree DP must succeed on a spanning tree");
                if comp.len() <= 12 {
                    match exhaustive_forest(g, &comp) {
                        Some(mut s) => stars.append(&mut s),
                        None => return Err(StarsError::DecompositionFailed),
                    }
                } else {
                    return Err(StarsError::DecompositionFailed);
                }
            }
        }
    }
    StarForest::new(g, stars)
}

// Child states relative to the parent edge (p, v), encoded as bit flags.
// S0: subtree done, edge unused. S0X: done, and v is a star center that
// can absorb one more branch through the edge. S1: v pending as a leaf or
// arm-end for a star above. S2: v plus one pending child, an arm for a
// center above. S3: v is a center with one branch, demanding a second
// through the edge. S4: a center below demands the arm (child, v, p),
// covering v as mid and p as end.
const S0: u8 = 1;
const S0X: u8 = 2;
const S1: u8 = 4;
const S2: u8 = 8;
const S3: u8 = 16;
const S4: u8 = 32;

const OPEN: u8 = S3 | S0X;

#[derive(Debug, Clone, Copy)]
enum How {
    /// S1: all children close on their own.
    Pending,
    /// S2: child j pends as the arm's end.
    Pair { j: usize },
    /// S3: v is a center; child j (in state `cs`) is the first branch.
    OpenCenter { j: usize, cs: u8 },
    /// S4: child j's openable center takes the arm (j, v, parent).
    MidUp { j: usize, cs: u8 },
    /// S0/S0X: v is a center; contributors recomputed at materialization.
    Center,
    /// S0: v joins child j's openable center as a leaf.
    JoinLeaf { j: usize, cs: u8 },
    /// S0: v is the mid of an arm from child j's center to sibling i.
    JoinMid { j: usize, cs: u8, i: usize },
    /// S0: v is the end of the arm child j passed up.
    TakeEnd { j: usize },
}

struct TreeDp {
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    feasible: Vec<u8>,
    how: Vec<[Option<How>; 6]>,
}

fn state_index(state: u8) -> usize {
    state.trailing_zeros() as usize
}

fn decompose_component(g: &Graph, comp: &[usize]) -> Option<Vec<OneStar>> {
    let root = comp[0];
    let mut dp = TreeDp {
        parent: vec![usize::MAX; g.n()],
        children: vec![Vec::new(); g.n()],
        feasible: vec![0; g.n()],
        how: vec![[None; 6]; g.n()],
    };

    // Iterative DFS producing a preorder; reversing it is a post-order.
    let mut order = Vec::with_capacity(comp.len());
    let mut visited = vec![false; g.n()];
    let mut stack = vec![root];
    visited[root] = true;
    dp.parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &e in g.incident(v) {
            let w = g.other_endpoint(e, v);
            if !visited[w] {
                visited[w] = true;
                dp.parent[w] = v;
                dp.children[v].push(w);
                stack.push(w);
            }
        }
    }
    debug_assert_eq!(order.len(), comp.len());

    for &v in order.iter().rev() {
        dp.compute(v);
    }
    if dp.feasible[root] & S0 == 0 {
        return None;
    }

    // Materialize top-down; a work item optionally carries the branch the
    // parent wants appended to the star opened or extendable at v.
    let mut builders: Vec<(usize, Vec<Branch>)> = Vec::new();
    let mut work: Vec<(usize, u8, Option<Branch>)> = vec![(root, S0, None)];
    while let Some((v, state, extra)) = work.pop() {
        dp.materialize(v, state, extra, &mut builders, &mut work);
    }

    let mut stars = Vec::with_capacity(builders.len());
    for (center, branches) in builders {
        stars.push(OneStar::new(center, &branches).expect("DP yields well-formed stars"));
    }
    Some(stars)
}

// One child may take a non-S0 role; every other child must close on its
// own. Returns the deterministic witness child for `pred`.
fn pick(feasible: &[u8], cs: &[usize], not_s0: &[usize], pred: u8) -> Option<usize> {
    match not_s0.len() {
        0 => cs.iter().copied().find(|&c| feasible[c] & pred != 0),
        1 if feasible[not_s0[0]] & pred != 0 => Some(not_s0[0]),
        _ => None,
    }
}

/// Lowest state bit of `pred` the child can actually supply.
fn used_state(feasible: &[u8], c: usize, pred: u8) -> u8 {
    let avail = feasible[c] & pred;
    debug_assert_ne!(avail, 0);
    1 << avail.trailing_zeros()
}

impl TreeDp {
    fn compute(&mut self, v: usize) {
        let cs: Vec<usize> = self.children[v].clone();
        let not_s0: Vec<usize> = cs
            .iter()
            .copied()
            .filter(|&c| self.feasible[c] & S0 == 0)
            .collect();

        let mut feasible = 0u8;
        let mut row: [Option<How>; 6] = [None; 6];
        let mut set = |feasible: &mut u8, state: u8, how: How| {
            *feasible |= state;
            row[state_index(state)] = Some(how);
        };

        // S1: v stays pending; nothing below may lean on v.
        if not_s0.is_empty() {
            set(&mut feasible, S1, How::Pending);
        }
        // S2: one pending child makes (v, child) an arm for a center above.
        if let Some(j) = pick(&self.feasible, &cs, &not_s0, S1) {
            set(&mut feasible, S2, How::Pair { j });
        }
        // S3: v opens a star with one branch from below.
        if let Some(j) = pick(&self.feasible, &cs, &not_s0, S1 | S2) {
            let cs_used = used_state(&self.feasible, j, S1 | S2);
            set(&mut feasible, S3, How::OpenCenter { j, cs: cs_used });
        }
        // S4: a center below reaches through v to cover the parent.
        if let Some(j) = pick(&self.feasible, &cs, &not_s0, OPEN) {
            let cs_used = used_state(&self.feasible, j, OPEN);
            set(&mut feasible, S4, How::MidUp { j, cs: cs_used });
        }

        // S0 via v as a closed center: children that cannot close must be
        // able to contribute a branch, and at least two branches total.
        let contributors = cs
            .iter()
            .filter(|&&c| self.feasible[c] & (S1 | S2) != 0)
            .count();
        let stuck_can_contribute = not_s0
            .iter()
            .all(|&c| self.feasible[c] & (S1 | S2) != 0);
        if contributors >= 2 && stuck_can_contribute {
            set(&mut feasible, S0X, How::Center);
            set(&mut feasible, S0, How::Center);
        }
        if feasible & S0 == 0 {
            // S0 via joining a child's openable center as a leaf.
            if let Some(j) = pick(&self.feasible, &cs, &not_s0, OPEN) {
                let cs_used = used_state(&self.feasible, j, OPEN);
                set(&mut feasible, S0, How::JoinLeaf { j, cs: cs_used });
            }
        }
        if feasible & S0 == 0 {
            // S0 via an arm from a child's center through v to a sibling.
            'outer: for (ji, &j) in cs.iter().enumerate() {
                if self.feasible[j] & OPEN == 0 {
                    continue;
                }
                for (ii, &i) in cs.iter().enumerate() {
                    if ii == ji || self.feasible[i] & S1 == 0 {
                        continue;
                    }
                    if not_s0.iter().all(|&c| c == j || c == i) {
                        let cs_used = used_state(&self.feasible, j, OPEN);
                        set(&mut feasible, S0, How::JoinMid { j, cs: cs_used, i });
                        break 'outer;
                    }
                }
            }
        }
        if feasible & S0 == 0 {
            // S0 via accepting the arm a child passes up.
            if let Some(j) = pick(&self.feasible, &cs, &not_s0, S4) {
                set(&mut feasible, S0, How::TakeEnd { j });
            }
        }

        self.feasible[v] = feasible;
        self.how[v] = row;
    }

    fn materialize(
        &self,
        v: usize,
        state: u8,
        extra: Option<Branch>,
        builders: &mut Vec<(usize, Vec<Branch>)>,
        work: &mut Vec<(usize, u8, Option<Branch>)>,
    ) {
        let how = self.how[v][state_index(state)].expect("materializing a feasible state");
        let close_rest = |work: &mut Vec<(usize, u8, Option<Branch>)>, used: &[usize]| {
            for &c in &self.children[v] {
                if !used.contains(&c) {
                    work.push((c, S0, None));
                }
            }
        };
        // Turns a child's pending state into the branch it becomes.
        let branch_of = |c: usize, cs: u8| -> Branch {
            match cs {
                S1 => Branch::Leaf(c),
                S2 => match self.how[c][state_index(S2)] {
                    Some(How::Pair { j }) => Branch::Arm { mid: c, end: j },
                    _ => unreachable!("S2 witness is always a pair"),
                },
                _ => unreachable!("branches come from S1 or S2"),
            }
        };

        match how {
            How::Pending => close_rest(work, &[]),
            How::Pair { j } => {
                work.push((j, S1, None));
                close_rest(work, &[j]);
            }
            How::OpenCenter { j, cs } => {
                let mut branches = vec![branch_of(j, cs)];
                branches.push(extra.expect("an open center is always completed from above"));
                builders.push((v, branches));
                work.push((j, cs, None));
                close_rest(work, &[j]);
            }
            How::MidUp { j, cs } => {
                let arm = Branch::Arm {
                    mid: v,
                    end: self.parent[v],
                };
                work.push((j, cs, Some(arm)));
                close_rest(work, &[j]);
            }
            How::Center => {
                // Children that cannot close must contribute; top up with
                // the smallest-index optional contributors to reach two.
                let cs_list = &self.children[v];
                let mut roles: Vec<(usize, u8)> = Vec::new();
                for &c in cs_list {
                    if self.feasible[c] & S0 == 0 {
                        let cs_used = 1 << (self.feasible[c] & (S1 | S2)).trailing_zeros();
                        roles.push((c, cs_used));
                    }
                }
                if roles.len() < 2 {
                    for &c in cs_list {
                        if roles.len() >= 2 {
                            break;
                        }
                        if self.feasible[c] & S0 != 0 && self.feasible[c] & (S1 | S2) != 0 {
                            let cs_used = 1 << (self.feasible[c] & (S1 | S2)).trailing_zeros();
                            roles.push((c, cs_used));
                        }
                    }
                }
                let mut branches: Vec<Branch> =
                    roles.iter().map(|&(c, cs)| branch_of(c, cs)).collect();
                if let Some(b) = extra {
                    branches.push(b);
                }
                let used: Vec<usize> = roles.iter().map(|&(c, _)| c).collect();
                for &(c, cs) in &roles {
                    work.push((c, cs, None));
                }
                builders.push((v, branches));
                close_rest(work, &used);
            }
            How::JoinLeaf { j, cs } => {
                work.push((j, cs, Some(Branch::Leaf(v))));
                close_rest(work, &[j]);
            }
            How::JoinMid { j, cs, i } => {
                work.push((j, cs, Some(Branch::Arm { mid: v, end: i })));
                work.push((i, S1, None));
                close_rest(work, &[j, i]);
            }
            How::TakeEnd { j } => {
                work.push((j, S4, None));
                close_rest(work, &[j]);
            }
        }
    }
}

/// Brute-force spanning 1-star forest for components of at most 12
/// vertices: bitmask feasibility over vertex subsets, always anchoring on
/// the lowest uncovered vertex.
fn exhaustive_forest(g: &Graph, comp: &[usize]) -> Option<Vec<OneStar>> {
    let n = comp.len();
    let rank: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![0u16; n];
    for (i, &v) in comp.iter().enumerate() {
        for &e in g.incident(v) {
            let w = g.other_endpoint(e, v);
            if let Some(&j) = rank.get(&w) {
                adj[i] |= 1 << j;
            }
        }
    }

    fn stars_anchored(
        adj: &[u16],
        alive: u16,
        anchor: usize,
    ) -> Vec<(u16, usize, Vec<(usize, Option<usize>)>)> {
        let n = adj.len();
        let mut out = Vec::new();
        for center in 0..n {
            if alive & (1 << center) == 0 {
                continue;
            }
            // Branch candidates: (mid/leaf vertex, optional end vertex).
            let mut cands: Vec<(u16, (usize, Option<usize>))> = Vec::new();
            for m in 0..n {
                if m == center || adj[center] & alive & (1 << m) == 0 {
                    continue;
                }
                cands.push((1 << m, (m, None)));
                for e in 0..n {
                    if e != center && adj[m] & alive & (1 << e) != 0 && e != m {
                        cands.push(((1 << m) | (1 << e), (m, Some(e))));
                    }
                }
            }
            // All pairwise-disjoint selections of at least two branches
            // whose union (with the center) covers the anchor.
            fn choose(
                cands: &[(u16, (usize, Option<usize>))],
                from: usize,
                mask: u16,
                picked: &mut Vec<(usize, Option<usize>)>,
                center: usize,
                anchor: usize,
                out: &mut Vec<(u16, usize, Vec<(usize, Option<usize>)>)>,
            ) {
                if picked.len() >= 2 {
                    let full = mask | (1 << center);
                    if full & (1 << anchor) != 0 {
                        out.push((full, center, picked.clone()));
                    }
                }
                for i in from..cands.len() {
                    let (bm, b) = cands[i];
                    if mask & bm != 0 {
                        continue;
                    }
                    picked.push(b);
                    choose(cands, i + 1, mask | bm, picked, center, anchor, out);
                    picked.pop();
                }
            }
            let mut picked = Vec::new();
            choose(&cands, 0, 0, &mut picked, center, anchor, &mut out);
        }
        out
    }

    fn feasible(adj: &[u16], s: u16, memo: &mut HashMap<u16, bool>) -> bool {
        if s == 0 {
            return true;
        }
        if let Some(&r) = memo.get(&s) {
            return r;
        }
        let anchor = s.trailing_zeros() as usize;
        let mut ok = false;
        for (mask, _, _) in stars_anchored(adj, s, anchor) {
            if feasible(adj, s & !mask, memo) {
                ok = true;
                break;
            }
        }
        memo.insert(s, ok);
        ok
    }

    let mut memo = HashMap::new();
    let mut s: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    if !feasible(&adj, s, &mut memo) {
        return None;
    }
    let mut stars = Vec::new();
    while s != 0 {
        let anchor = s.trailing_zeros() as usize;
        let choice = stars_anchored(&adj, s, anchor)
            .into_iter()
            .find(|(mask, _, _)| feasible(&adj, s & !mask, &mut memo))
            .expect("feasible set admits an anchored star");
        let (mask, center, picked) = choice;
        let branches: Vec<Branch> = picked
            .iter()
            .map(|&(m, e)| match e {
                None => Branch::Leaf(comp[m]),
                Some(end) => Branch::Arm {
                    mid: comp[m],
                    end: comp[end],
                },
            })
            .collect();
        stars.push(OneStar::new(comp[center], &branches).ok()?);
        s &= !mask;
    }
    Some(stars)
}

// ============================================================================
// Colored pieces and k-graph tags
// ============================================================================

/// Size class of a piece: tag `k` covers orders `2^k` through
/// `2^{k+1} - 1`. Two equal-tag pieces merge into a piece of the next tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KGraphTag(u32);

impl KGraphTag {
    pub fn of_order(n: usize) -> KGraphTag {
        assert!(n >= 1, "tags are defined for non-empty graphs");
        KGraphTag(n.ilog2())
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

/// A validly colored subgraph in host-vertex coordinates: sorted vertex
/// list, canonical edge list with one color set each, and its palette.
/// Construction re-verifies validity on the compact relabeled graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredSubgraph {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    sets: Vec<ColorSet>,
    k: u32,
}

impl ColoredSubgraph {
    pub fn new(
        mut vertices: Vec<usize>,
        edges: Vec<(usize, usize)>,
        sets: Vec<ColorSet>,
        k: u32,
    ) -> Result<Self, StarsError> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(StarsError::Overlap(w[0]));
        }
        if edges.len() != sets.len() {
            return Err(StarsError::Coloring(ColoringError::LengthMismatch {
                got: sets.len(),
                want: edges.len(),
            }));
        }
        let mut pairs: Vec<((usize, usize), ColorSet)> = edges
            .iter()
            .zip(sets)
            .map(|(&(u, v), s)| ((u.min(v), u.max(v)), s))
            .collect();
        pairs.sort_unstable_by_key(|&(e, _)| e);
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(StarsError::DuplicateEdge(w[0].0 .0, w[0].0 .1));
        }

        let rank = |v: usize| vertices.binary_search(&v);
        let mut touched = vec![false; vertices.len()];
        let mut local_edges = Vec::with_capacity(pairs.len());
        for &((u, v), _) in &pairs {
            let (lu, lv) = match (rank(u), rank(v)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Err(StarsError::NotPartition(u)),
            };
            touched[lu] = true;
            touched[lv] = true;
            local_edges.push((lu, lv));
        }
        if let Some(i) = touched.iter().position(|&t| !t) {
            return Err(StarsError::IsolatedVertex(vertices[i]));
        }

        let local = Graph::new(vertices.len(), &local_edges)?;
        let sets: Vec<ColorSet> = pairs.iter().map(|&(_, s)| s).collect();
        let coloring = Coloring::new(k, sets.clone())?;
        match verify(&local, &coloring) {
            Ok(report) if report.valid => {}
            _ => return Err(StarsError::InvalidPiece),
        }
        let edges = pairs.into_iter().map(|(e, _)| e).collect();
        Ok(ColoredSubgraph {
            vertices,
            edges,
            sets,
            k,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn sets(&self) -> &[ColorSet] {
        &self.sets
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn tag(&self) -> KGraphTag {
        KGraphTag::of_order(self.n())
    }

    pub fn is_optimal(&self) -> bool {
        lower_bound_for_order(self.n()).map(|lb| lb == self.k) == Ok(true)
    }

    /// Compact view: the relabeled graph, its coloring, and the map from
    /// local index back to host vertex.
    pub fn to_local(&self) -> (Graph, Coloring, Vec<usize>) {
        let rank = |v: usize| self.vertices.binary_search(&v).expect("vertex present");
        let local_edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (rank(u), rank(v)))
            .collect();
        let g = Graph::new(self.vertices.len(), &local_edges).expect("validated edges");
        let c = Coloring::new(self.k, self.sets.clone()).expect("validated sets");
        (g, c, self.vertices.clone())
    }
}

// ============================================================================
// Star coloring (optimal per star)
// ============================================================================

/// Colors one star optimally: palette `ceil(log2(n + 1))`, the center's
/// code is the full palette, and all labels are pairwise-distinct strict
/// subsets. Two-leaf stars (paths on three vertices) get `{1}`, `{2}`.
pub fn color_1star(star: &OneStar) -> Result<ColoredSubgraph, StarsError> {
    let n = star.n();
    let k = lower_bound_for_order(n)?;
    let x = star.arms().len();
    let z = star.leaves().len();

    // Labels in the order of star.edges(): arm center-edges, arm
    // mid-edges, then leaf edges.
    let mut x_labels: Vec<u64> = Vec::with_capacity(x);
    let mut xy_labels: Vec<u64> = Vec::with_capacity(x);
    let mut z_labels: Vec<u64> = Vec::with_capacity(z);

    let full = ColorSet::first_k(k).mask();
    let kbit = 1u64 << (k - 1);
    let mut used = std::collections::HashSet::new();

    if n == 3 {
        // A two-leaf star; the strict-subset scheme needs k >= 3.
        z_labels.extend([0b01, 0b10]);
    } else if x >= 2 && x as u64 == kbit - 1 {
        // Tight case: every strict subset will be used exactly once, which
        // the generic rule cannot reach; the first two arms get bespoke
        // labels and the rest proceed generically.
        x_labels.push((kbit >> 1) - 1 | kbit);
        xy_labels.push(kbit);
        x_labels.push(kbit - 1);
        xy_labels.push((kbit >> 1) - 1);
        used.extend(x_labels.iter().copied());
        used.extend(xy_labels.iter().copied());
        for _ in 2..x {
            let m = next_arm_label(kbit, full, &used, 0);
            x_labels.push(m);
            used.insert(m);
            let my = m & !kbit;
            debug_assert!(!used.contains(&my));
            xy_labels.push(my);
            used.insert(my);
        }
    } else {
        // Arm labels: strict subsets of size >= 2 containing the top
        // color, in increasing mask order; with two or more arms the last
        // one is steered to cover whatever colors are still missing, so
        // the center's code is the full palette.
        if x > 0 {
            let mut covered = 0u64;
            for _ in 0..x - 1 {
                let m = next_arm_label(kbit, full, &used, 0);
                x_labels.push(m);
                used.insert(m);
                covered |= m;
            }
            let need = if x >= 2 { (full & !covered) | kbit } else { 0 };
            let m = next_arm_label(kbit, full, &used, need);
            x_labels.push(m);
            used.insert(m);
            for &xm in &x_labels {
                let my = xm & !kbit;
                debug_assert!(!used.contains(&my));
                xy_labels.push(my);
                used.insert(my);
            }
        }
        if z > 0 {
            // The all-but-top set is never an arm label or its mid
            // remainder, so it is always free; it completes the center's
            // code when there is at most one arm.
            let mandatory = full & !kbit;
            debug_assert!(!used.contains(&mandatory));
            z_labels.push(mandatory);
            used.insert(mandatory);
            if x == 0 && z_labels.len() < z {
                // No arm carries the top color, so one leaf must.
                let m = next_free_label(full, &used, kbit);
                z_labels.push(m);
                used.insert(m);
            }
            while z_labels.len() < z {
                let m = next_free_label(full, &used, 0);
                z_labels.push(m);
                used.insert(m);
            }
        }
    }

    // Strict non-empty subsets number 2^k - 2, which bounds the labels a
    // star may need.
    assert!(
        (star.edges().len() as u64) <= (1u64 << k) - 2,
        "star on {n} vertices exceeds the palette's label supply"
    );

    let sets: Vec<ColorSet> = x_labels
        .iter()
        .chain(xy_labels.iter())
        .chain(z_labels.iter())
        .map(|&m| ColorSet::from_mask(m))
        .collect();
    debug_assert_eq!(sets.len(), star.edges().len());
    let piece = ColoredSubgraph::new(star.vertices(), star.edges(), sets, k)?;

    debug_assert!(piece.is_optimal());
    #[cfg(debug_assertions)]
    {
        let (lg, lc, hosts) = piece.to_local();
        let center_local = hosts
            .iter()
            .position(|&v| v == star.center())
            .expect("center present");
        debug_assert_eq!(
            code(&lg, &lc, center_local),
            ColorSet::first_k(k),
            "center code must be the full palette"
        );
        let mut labels: Vec<u64> = lc.sets().iter().map(|s| s.mask()).collect();
        labels.sort_unstable();
        debug_assert!(labels.windows(2).all(|w| w[0] != w[1]), "labels distinct");
        debug_assert!(
            labels.iter().all(|&m| m != 0 && m != full),
            "labels are strict non-empty subsets"
        );
    }
    Ok(piece)
}

/// Smallest unassigned arm label: a strict subset of size at least two
/// containing the top color and every bit of `need`.
fn next_arm_label(
    kbit: u64,
    full: u64,
    used: &std::collections::HashSet<u64>,
    need: u64,
) -> u64 {
    let mut m = kbit + 1;
    while m < full {
        if m & need == need && !used.contains(&m) {
            return m;
        }
        m += 1;
    }
    panic!("arm label supply exhausted; the tight case should have applied");
}

/// Smallest unassigned strict non-empty subset containing `need`.
fn next_free_label(full: u64, used: &std::collections::HashSet<u64>, need: u64) -> u64 {
    let mut m = 1;
    while m < full {
        if m & need == need && !used.contains(&m) {
            return m;
        }
        m += 1;
    }
    panic!("leaf label supply exhausted; stars never need more than 2^k - 2 labels");
}

// ============================================================================
// Merging disjoint colored pieces
// ============================================================================

/// Disjoint union of two pieces, adding `fresh` to every edge of `b`.
fn union_pieces(
    a: &ColoredSubgraph,
    b: &ColoredSubgraph,
    fresh: u32,
) -> Result<ColoredSubgraph, StarsError> {
    let mut vertices = Vec::with_capacity(a.n() + b.n());
    vertices.extend_from_slice(a.vertices());
    vertices.extend_from_slice(b.vertices());
    let mut edges = Vec::with_capacity(a.edges().len() + b.edges().len());
    edges.extend_from_slice(a.edges());
    edges.extend_from_slice(b.edges());
    let mut sets = Vec::with_capacity(edges.len());
    sets.extend_from_slice(a.sets());
    sets.extend(b.sets().iter().map(|s| s.with(fresh)));
    ColoredSubgraph::new(vertices, edges, sets, fresh)
}

/// Merges two optimally colored pieces of the same size class into an
/// optimally colored piece of the next class: `a` keeps its labels, `b`'s
/// labels gain one fresh color.
pub fn merge_two_kgraphs(
    a: &ColoredSubgraph,
    b: &ColoredSubgraph,
) -> Result<ColoredSubgraph, StarsError> {
    if a.tag() != b.tag() {
        return Err(StarsError::TagMismatch(a.tag().value(), b.tag().value()));
    }
    for piece in [a, b] {
        if !piece.is_optimal() {
            return Err(StarsError::NotOptimal {
                got: piece.k(),
                want: lower_bound_for_order(piece.n())?,
            });
        }
    }
    // Equal tags and optimality force equal palettes.
    debug_assert_eq!(a.k(), b.k());
    let merged = union_pieces(a, b, a.k() + 1)?;
    debug_assert!(merged.is_optimal());
    Ok(merged)
}

/// Combines vertex-disjoint optimally colored pieces into one coloring of
/// their union, spending at most one color over the union's lower bound:
/// equal-tag pieces merge for free, then the distinct survivors fold in
/// increasing size with one fresh color per fold.
pub fn combine_disjoint(pieces: Vec<ColoredSubgraph>) -> Result<ColoredSubgraph, StarsError> {
    if pieces.is_empty() {
        return Err(StarsError::Empty);
    }
    for piece in &pieces {
        if !piece.is_optimal() {
            return Err(StarsError::NotOptimal {
                got: piece.k(),
                want: lower_bound_for_order(piece.n())?,
            });
        }
    }
    let total: usize = pieces.iter().map(|p| p.n()).sum();

    let sort_key = |p: &ColoredSubgraph| (p.tag(), p.n(), p.vertices()[0]);
    let mut pool = pieces;
    pool.sort_by_key(sort_key);
    loop {
        let dup = pool
            .windows(2)
            .position(|w| w[0].tag() == w[1].tag());
        match dup {
            Some(i) => {
                let b = pool.remove(i + 1);
                let a = pool.remove(i);
                let merged = merge_two_kgraphs(&a, &b)?;
                pool.push(merged);
                pool.sort_by_key(sort_key);
            }
            None => break,
        }
    }

    let mut iter = pool.into_iter();
    let mut acc = iter.next().expect("non-empty pool");
    for next in iter {
        assert!(
            acc.k() <= next.k(),
            "folding in increasing size keeps palettes monotone"
        );
        acc = union_pieces(&acc, &next, next.k() + 1)?;
    }
    assert!(
        acc.k() <= lower_bound_for_order(total)? + 1,
        "combining may cost at most one color over the union's bound"
    );
    Ok(acc)
}

// ============================================================================
// Lift and the general pipeline
// ============================================================================

/// Extends a valid coloring of an edge-subgraph `h` (same vertex set) to
/// the full graph by labeling every missing edge with one fresh color.
/// Codes below the fresh color are untouched.
pub fn lift_to_supergraph(
    g: &Graph,
    h: &Graph,
    c: &Coloring,
) -> Result<Coloring, StarsError> {
    if h.n() != g.n() {
        return Err(StarsError::NotSubgraph);
    }
    if c.sets().len() != h.m() {
        return Err(StarsError::Coloring(ColoringError::LengthMismatch {
            got: c.sets().len(),
            want: h.m(),
        }));
    }
    let mut host_sets = vec![None; g.m()];
    for (i, &(u, v)) in h.edges().iter().enumerate() {
        match g.edge_index(u, v) {
            Some(e) => host_sets[e] = Some(c.set(i)),
            None => return Err(StarsError::NotSubgraph),
        }
    }
    let fresh_needed = host_sets.iter().any(|s| s.is_none());
    if fresh_needed && c.k() >= crate::colorset::MAX_COLORS {
        return Err(StarsError::Coloring(ColoringError::PaletteTooLarge(
            c.k() + 1,
        )));
    }
    let k = if fresh_needed { c.k() + 1 } else { c.k() };
    let sets: Vec<ColorSet> = host_sets
        .into_iter()
        .map(|s| s.unwrap_or_else(|| ColorSet::single(c.k() + 1)))
        .collect();
    let lifted = Coloring::new(k, sets)?;

    #[cfg(debug_assertions)]
    for v in 0..g.n() {
        let before = code(h, c, v);
        let after = code(g, &lifted, v);
        debug_assert_eq!(
            ColorSet::from_mask(after.mask() & ColorSet::first_k(c.k()).mask()),
            before,
            "lift must preserve codes below the fresh color"
        );
    }
    Ok(lifted)
}

/// Colors any admissible graph with at most two colors above the lower
/// bound: decompose into a spanning 1-star forest, color each star
/// optimally, combine, and lift the dropped edges back in.
pub fn color_general(g: &Graph) -> Result<Coloring, StarsError> {
    let forest = decompose_1stars(g)?;
    let mut pieces = Vec::with_capacity(forest.stars().len());
    for star in forest.stars() {
        pieces.push(color_1star(star)?);
    }
    let combined = combine_disjoint(pieces)?;

    debug_assert_eq!(combined.n(), g.n(), "forest spans the host");
    let h = Graph::new(g.n(), combined.edges())?;
    let hc = Coloring::new(combined.k(), combined.sets().to_vec())?;
    let result = lift_to_supergraph(g, &h, &hc)?;

    #[cfg(debug_assertions)]
    {
        let lb = crate::graph::lower_bound(g).expect("admissible host");
        debug_assert!(result.k() <= lb + 2, "pipeline exceeds the +2 guarantee");
        debug_assert!(verify(g, &result).map(|r| r.valid).unwrap_or(false));
    }
    Ok(result)
}

// ============================================================================
// Tests
// ============================================================================
