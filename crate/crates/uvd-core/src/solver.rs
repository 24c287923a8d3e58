//! Exhaustive search for colorings, and the exact invariant it computes.
//!
//! `exists_coloring` decides whether a graph admits a valid coloring with a
//! given palette by backtracking over per-edge color sets. It is meant for
//! small instances (roughly n <= 16, k <= 5): the per-edge domain has
//! `2^k - 1` candidates, so everything rides on pruning:
//!
//! - edges are ordered so vertices finish early (most constrained vertex
//!   first), and a finished vertex that repeats an existing code kills the
//!   branch;
//! - optional symmetry breaking admits only assignments where color `c+1`
//!   first appears after color `c` (color names are interchangeable);
//! - on tight instances (few spare codes) a bipartite matching check
//!   verifies the remaining vertices can still reach pairwise-distinct
//!   codes, which is what refutes `K_7` at three colors quickly.
//!
//! `chi_union` walks palettes from the lower bound upward; the construction
//! pipeline guarantees an answer at most two above the bound, so the walk
//! is a three-step window.

use std::collections::HashSet;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::colorset::{ColorSet, MAX_COLORS};
use crate::cycle::{CycleSeedColoring, CycleError};
use crate::generate;
use crate::graph::{lower_bound, Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("palette size {0} outside 1..={MAX_COLORS}")]
    BadPalette(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Seed(#[from] CycleError),
    #[error("search window [{lo}, {hi}] exhausted with no witness; this contradicts the upper-bound construction and indicates a solver bug")]
    WindowExhausted { lo: u32, hi: u32 },
}

/// Knobs for one existence query.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Palette size to search under.
    pub k: u32,
    /// Cap on assignment attempts; `None` searches to completion.
    pub node_limit: Option<u64>,
    /// Color-renaming symmetry breaking; on by default.
    pub symmetry_breaking: bool,
}

impl SearchConfig {
    pub fn new(k: u32) -> Self {
        SearchConfig {
            k,
            node_limit: None,
            symmetry_breaking: true,
        }
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn without_symmetry_breaking(mut self) -> Self {
        self.symmetry_breaking = false;
        self
    }
}

/// Answer of an existence query. `Unsat` is a completed refutation;
/// `BudgetExceeded` is not an answer, only an honest shrug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Coloring),
    Unsat { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

/// Result of the palette walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiResult {
    /// Exact value with a witness at that palette; every smaller palette in
    /// the window was refuted exhaustively.
    Proved { value: u32, witness: Coloring },
    /// Budget ran out at palette `lo`; the true value lies in `[lo, hi]`.
    Interval { lo: u32, hi: u32 },
}

/// Decides whether `g` has a valid coloring with palette `cfg.k`.
///
/// Deterministic: the witness returned is the first one in the fixed
/// search order, so identical inputs yield identical witnesses.
pub fn exists_coloring(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, SolverError> {
    if cfg.k < 1 || cfg.k > MAX_COLORS {
        return Err(SolverError::BadPalette(cfg.k));
    }
    if let Some(comp) = g.components().iter().find(|c| c.len() < 3) {
        return Err(SolverError::Graph(GraphError::Inadmissible(comp[0])));
    }
    // Pigeonhole: n distinct non-empty codes need 2^k - 1 >= n.
    if (g.n() as u128) > (1u128 << cfg.k) - 1 {
        return Ok(SearchOutcome::Unsat { nodes: 0 });
    }
    Ok(Searcher::new(g, cfg, Vec::new()).run())
}

/// `exists_coloring` with work split across `jobs` threads on the first
/// edge's candidate masks. The answer (and any witness) is identical to the
/// sequential one; with a node limit, the limit applies per branch.
pub fn exists_coloring_jobs(
    g: &Graph,
    cfg: &SearchConfig,
    jobs: usize,
) -> Result<SearchOutcome, SolverError> {
    if jobs <= 1 {
        return exists_coloring(g, cfg);
    }
    if cfg.k < 1 || cfg.k > MAX_COLORS {
        return Err(SolverError::BadPalette(cfg.k));
    }
    if let Some(comp) = g.components().iter().find(|c| c.len() < 3) {
        return Err(SolverError::Graph(GraphError::Inadmissible(comp[0])));
    }
    if (g.n() as u128) > (1u128 << cfg.k) - 1 {
        return Ok(SearchOutcome::Unsat { nodes: 0 });
    }
    if g.m() == 0 {
        return Ok(Searcher::new(g, cfg, Vec::new()).run());
    }

    let probe = Searcher::new(g, cfg, Vec::new());
    let first_edge = probe.order[0];
    let candidates: Vec<u64> = probe.domain_at(0);
    drop(probe);

    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<SearchOutcome>> = vec![None; candidates.len()];
    let slot_refs: Vec<std::sync::Mutex<&mut Option<SearchOutcome>>> =
        slots.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(candidates.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= candidates.len() {
                    break;
                }
                let pins = vec![(first_edge, vec![candidates[i]])];
                let outcome = Searcher::new(g, cfg, pins).run();
                **slot_refs[i].lock().unwrap() = Some(outcome);
            });
        }
    });

    // Branches are merged in candidate order, reproducing the sequential
    // scan: a budget cut before any witness stays a budget cut.
    let mut nodes = 0u64;
    for slot in slots {
        match slot.expect("every branch ran") {
            SearchOutcome::Found(c) => return Ok(SearchOutcome::Found(c)),
            SearchOutcome::Unsat { nodes: n } => nodes += n,
            SearchOutcome::BudgetExceeded { nodes: n } => {
                return Ok(SearchOutcome::BudgetExceeded { nodes: nodes + n })
            }
        }
    }
    Ok(SearchOutcome::Unsat { nodes })
}

/// Exact minimum palette by walking `[lower_bound, lower_bound + 2]`.
pub fn chi_union(g: &Graph, node_limit: Option<u64>) -> Result<ChiResult, SolverError> {
    chi_union_jobs(g, node_limit, 1)
}

/// `chi_union` with solver parallelism; see `exists_coloring_jobs`.
pub fn chi_union_jobs(
    g: &Graph,
    node_limit: Option<u64>,
    jobs: usize,
) -> Result<ChiResult, SolverError> {
    let lb = lower_bound(g)?;
    let hi = lb + 2;
    for k in lb..=hi {
        let mut cfg = SearchConfig::new(k);
        cfg.node_limit = node_limit;
        match exists_coloring_jobs(g, &cfg, jobs)? {
            SearchOutcome::Found(witness) => {
                return Ok(ChiResult::Proved { value: k, witness })
            }
            SearchOutcome::Unsat { .. } => continue,
            SearchOutcome::BudgetExceeded { .. } => {
                return Ok(ChiResult::Interval { lo: k, hi })
            }
        }
    }
    Err(SolverError::WindowExhausted { lo: lb, hi })
}

/// Searches for a cycle coloring usable as a doubling seed: a valid
/// k-coloring of `C_n` where vertex 0 has code `{1}` and color 1 appears
/// on the edge `(1, 2)`. Returns `None` when no such coloring exists
/// (immediately so when `n > 2^k - 1`).
pub fn find_seed_coloring(n: usize, k: u32) -> Result<Option<CycleSeedColoring>, SolverError> {
    if k < 1 || k > MAX_COLORS {
        return Err(SolverError::BadPalette(k));
    }
    let g = generate::cycle(n).map_err(|_| SolverError::Graph(GraphError::Inadmissible(0)))?;
    if (n as u128) > (1u128 << k) - 1 {
        return Ok(None);
    }
    // Code {1} at vertex 0 forces both of its edges to exactly {1}.
    let pins = seed_pins(&g, n, k);
    let cfg = SearchConfig {
        k,
        node_limit: None,
        // Pinned colors break the color-renaming symmetry group, so the
        // canonical-order filter is not applied here.
        symmetry_breaking: false,
    };
    match Searcher::new(&g, &cfg, pins).run() {
        SearchOutcome::Found(c) => Ok(Some(CycleSeedColoring::new(n, k, c)?)),
        SearchOutcome::Unsat { .. } => Ok(None),
        SearchOutcome::BudgetExceeded { .. } => unreachable!("no node limit set"),
    }
}

/// Seed search constrained to a fixed multiset of edge labels. Used once to
/// pin the published `C_15` seed to the label multiset of its source; kept
/// so the golden file can be re-derived by a test.
pub fn find_seed_from_pool(
    n: usize,
    k: u32,
    pool: &[ColorSet],
) -> Result<Option<CycleSeedColoring>, SolverError> {
    if k < 1 || k > MAX_COLORS {
        return Err(SolverError::BadPalette(k));
    }
    let g = generate::cycle(n).map_err(|_| SolverError::Graph(GraphError::Inadmissible(0)))?;
    if pool.len() != g.m() || (n as u128) > (1u128 << k) - 1 {
        return Ok(None);
    }

    // Distinct labels with multiplicities, tried in increasing mask order.
    let mut labels: Vec<(u64, u32)> = Vec::new();
    let mut sorted: Vec<u64> = pool.iter().map(|s| s.mask()).collect();
    sorted.sort_unstable();
    for mask in sorted {
        match labels.last_mut() {
            Some((m, c)) if *m == mask => *c += 1,
            _ => labels.push((mask, 1)),
        }
    }
    let full = ColorSet::first_k(k).mask();
    if labels.iter().any(|&(m, _)| m == 0 || m & !full != 0) {
        return Ok(None);
    }

    let pins = seed_pins(&g, n, k);
    let mut domains: Vec<Option<Vec<u64>>> = vec![None; g.m()];
    for (edge, dom) in pins {
        domains[edge] = Some(dom);
    }

    // Walk order completes vertex i right after its second edge, keeping
    // the clash prune sharp around the cycle.
    let mut order: Vec<usize> = (0..n - 1)
        .map(|i| g.edge_index(i, i + 1).unwrap())
        .collect();
    order.push(g.edge_index(0, n - 1).unwrap());

    let mut assigned: Vec<u64> = vec![0; g.m()];
    let mut seen = HashSet::new();
    if assign_from_pool(&g, &order, &domains, &mut labels, &mut assigned, &mut seen, 0) {
        let sets = assigned.iter().map(|&m| ColorSet::from_mask(m)).collect();
        let c = Coloring::new(k, sets).expect("pool labels fit the palette");
        return Ok(Some(CycleSeedColoring::new(n, k, c)?));
    }
    Ok(None)
}

fn seed_pins(g: &Graph, n: usize, k: u32) -> Vec<(usize, Vec<u64>)> {
    let one = 1u64;
    let full = ColorSet::first_k(k).mask();
    let contains_one: Vec<u64> = (1..=full).filter(|m| m & 1 != 0).collect();
    vec![
        (g.edge_index(0, 1).unwrap(), vec![one]),
        (g.edge_index(0, n - 1).unwrap(), vec![one]),
        (g.edge_index(1, 2).unwrap(), contains_one),
    ]
}

fn assign_from_pool(
    g: &Graph,
    order: &[usize],
    domains: &[Option<Vec<u64>>],
    labels: &mut Vec<(u64, u32)>,
    assigned: &mut Vec<u64>,
    seen: &mut HashSet<u64>,
    pos: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let edge = order[pos];
    for li in 0..labels.len() {
        let (mask, count) = labels[li];
        if count == 0 {
            continue;
        }
        if let Some(dom) = &domains[edge] {
            if !dom.contains(&mask) {
                continue;
            }
        }
        labels[li].1 -= 1;
        assigned[edge] = mask;

        // Vertices whose incident edges are now all assigned must show a
        // fresh code.
        let (u, v) = g.edge(edge);
        let mut completed: Vec<u64> = Vec::new();
        let mut ok = true;
        'verts: for w in [u, v] {
            if g.incident(w).iter().all(|&e| assigned[e] != 0) {
                let mut code = 0u64;
                for &e in g.incident(w) {
                    code |= assigned[e];
                }
                if !seen.insert(code) {
                    ok = false;
                    break 'verts;
                }
                completed.push(code);
            }
        }
        if ok && assign_from_pool(g, order, domains, labels, assigned, seen, pos + 1) {
            return true;
        }
        for code in completed {
            seen.remove(&code);
        }
        assigned[edge] = 0;
        labels[li].1 += 1;
    }
    false
}

// ============================================================================
// Backtracking core
// ============================================================================

enum Verdict {
    Found,
    Exhausted,
    Budget,
}

struct Searcher<'a> {
    g: &'a Graph,
    k: u32,
    full: u64,
    sym: bool,
    node_limit: u64,
    nodes: u64,
    /// Edge indices in assignment order.
    order: Vec<usize>,
    /// Pinned domains by edge index.
    pinned: Vec<Option<Vec<u64>>>,
    /// Current mask per edge; 0 means unassigned.
    assigned: Vec<u64>,
    /// Union of assigned incident masks per vertex.
    partial: Vec<u64>,
    /// Unassigned incident edges per vertex.
    remaining: Vec<u32>,
    /// Codes of finished vertices.
    seen: HashSet<u64>,
    hall_gate: bool,
    // Scratch for the matching prune.
    owner: Vec<usize>,
    stamp: Vec<u64>,
    round: u64,
}

const HALL_SLACK: u64 = 8;
const HALL_MAX_K: u32 = 16;

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, cfg: &SearchConfig, pins: Vec<(usize, Vec<u64>)>) -> Searcher<'a> {
        let full = ColorSet::first_k(cfg.k).mask();
        let mut pinned: Vec<Option<Vec<u64>>> = vec![None; g.m()];
        for (edge, dom) in pins {
            pinned[edge] = Some(dom);
        }
        let codes_total = if cfg.k <= 63 {
            (1u64 << cfg.k) - 1
        } else {
            u64::MAX
        };
        let hall_gate = cfg.k <= HALL_MAX_K
            && codes_total >= g.n() as u64
            && codes_total - g.n() as u64 <= HALL_SLACK;
        let table = if hall_gate { 1usize << cfg.k } else { 0 };
        Searcher {
            g,
            k: cfg.k,
            full,
            sym: cfg.symmetry_breaking,
            node_limit: cfg.node_limit.unwrap_or(u64::MAX),
            nodes: 0,
            order: ordering(g),
            pinned,
            assigned: vec![0; g.m()],
            partial: vec![0; g.n()],
            remaining: (0..g.n()).map(|v| g.degree(v) as u32).collect(),
            seen: HashSet::new(),
            hall_gate,
            owner: vec![usize::MAX; table],
            stamp: vec![0; table],
            round: 0,
        }
    }

    fn domain_at(&self, pos: usize) -> Vec<u64> {
        let edge = self.order[pos];
        match &self.pinned[edge] {
            Some(dom) => dom.clone(),
            None => (1..=self.full).collect(),
        }
    }

    fn run(mut self) -> SearchOutcome {
        match self.dive(0, 0) {
            Verdict::Found => {
                let sets = self
                    .assigned
                    .iter()
                    .map(|&m| ColorSet::from_mask(m))
                    .collect();
                let c = Coloring::new(self.k, sets).expect("masks confined to the palette");
                SearchOutcome::Found(c)
            }
            Verdict::Exhausted => SearchOutcome::Unsat { nodes: self.nodes },
            Verdict::Budget => SearchOutcome::BudgetExceeded { nodes: self.nodes },
        }
    }

    fn dive(&mut self, pos: usize, max_used: u32) -> Verdict {
        if pos == self.order.len() {
            return Verdict::Found;
        }
        let edge = self.order[pos];
        let (u, v) = self.g.edge(edge);
        let pinned = self.pinned[edge].take();
        let candidates: Box<dyn Iterator<Item = u64>> = match &pinned {
            Some(dom) => Box::new(dom.clone().into_iter()),
            None => Box::new(1..=self.full),
        };

        let mut verdict = Verdict::Exhausted;
        for mask in candidates {
            if self.sym && !prefix_ok(mask, max_used) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_limit {
                verdict = Verdict::Budget;
                break;
            }

            let saved_u = self.partial[u];
            let saved_v = self.partial[v];
            self.assigned[edge] = mask;
            self.partial[u] |= mask;
            self.partial[v] |= mask;
            self.remaining[u] -= 1;
            self.remaining[v] -= 1;

            let mut fresh: [u64; 2] = [0, 0];
            let mut nfresh = 0;
            let mut ok = true;
            for w in [u, v] {
                if self.remaining[w] == 0 {
                    let code = self.partial[w];
                    if self.seen.insert(code) {
                        fresh[nfresh] = code;
                        nfresh += 1;
                    } else {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.hall_gate && !self.hall_ok() {
                ok = false;
            }
            if ok {
                let next_max = max_used.max(ColorSet::from_mask(mask).max_color());
                match self.dive(pos + 1, next_max) {
                    Verdict::Found => {
                        verdict = Verdict::Found;
                    }
                    Verdict::Budget => {
                        verdict = Verdict::Budget;
                    }
                    Verdict::Exhausted => {}
                }
            }

            for &code in &fresh[..nfresh] {
                self.seen.remove(&code);
            }
            self.remaining[u] += 1;
            self.remaining[v] += 1;
            self.partial[u] = saved_u;
            self.partial[v] = saved_v;
            self.assigned[edge] = 0;

            if matches!(verdict, Verdict::Found | Verdict::Budget) {
                if matches!(verdict, Verdict::Found) {
                    // Keep the witness in place for reconstruction.
                    self.assigned[edge] = mask;
                }
                break;
            }
        }
        self.pinned[edge] = pinned;
        verdict
    }

    /// Matching check: every vertex must still reach a code no other vertex
    /// takes. Finished vertices are pinned to their code; unfinished ones
    /// reach any superset of their partial code.
    fn hall_ok(&mut self) -> bool {
        for slot in self.owner.iter_mut() {
            *slot = usize::MAX;
        }
        for v in 0..self.g.n() {
            self.round += 1;
            if !self.augment(v) {
                return false;
            }
        }
        true
    }

    fn augment(&mut self, v: usize) -> bool {
        let p = self.partial[v];
        if self.remaining[v] == 0 {
            return self.claim(v, p);
        }
        let free = self.full & !p;
        let mut s = free;
        loop {
            let code = p | s;
            if code != 0 && self.claim(v, code) {
                return true;
            }
            if s == 0 {
                return false;
            }
            s = (s - 1) & free;
        }
    }

    fn claim(&mut self, v: usize, code: u64) -> bool {
        let idx = code as usize;
        if self.stamp[idx] == self.round {
            return false;
        }
        self.stamp[idx] = self.round;
        let holder = self.owner[idx];
        if holder == usize::MAX || self.augment(holder) {
            self.owner[idx] = v;
            return true;
        }
        false
    }
}

/// Static assignment order: repeatedly take the vertex with the fewest
/// unordered incident edges and queue them all, so some vertex always
/// finishes as early as possible.
fn ordering(g: &Graph) -> Vec<usize> {
    let mut left: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut done = vec![false; g.m()];
    let mut order = Vec::with_capacity(g.m());
    while order.len() < g.m() {
        let v = (0..g.n())
            .filter(|&v| left[v] > 0)
            .min_by_key(|&v| (left[v], v))
            .expect("unordered edges imply an eligible vertex");
        for &e in g.incident(v) {
            if !done[e] {
                done[e] = true;
                order.push(e);
                let (a, b) = g.edge(e);
                left[a] -= 1;
                left[b] -= 1;
            }
        }
    }
    order
}

/// Symmetry filter: with `t` the largest color used so far, a mask may only
/// introduce the consecutive colors `t+1, t+2, ...`.
fn prefix_ok(mask: u64, t: u32) -> bool {
    let prefix = mask_first(t);
    let new = mask & !prefix;
    if new == 0 {
        return true;
    }
    let j = new.count_ones();
    new == mask_first(t + j) & !prefix
}

#[inline]
fn mask_first(t: u32) -> u64 {
    if t >= 64 {
        u64::MAX
    } else {
        (1u64 << t) - 1
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::generate;

    fn assert_found_valid(g: &Graph, outcome: SearchOutcome) -> Coloring {
        match outcome {
            SearchOutcome::Found(c) => {
                assert!(verify(g, &c).unwrap().valid);
                c
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    // ------------------------------------------------------------------
    // Existence queries
    // ------------------------------------------------------------------

    #[test]
    fn p3_needs_two_colors() {
        let g = generate::path(3).unwrap();
        let one = exists_coloring(&g, &SearchConfig::new(1)).unwrap();
        assert!(matches!(one, SearchOutcome::Unsat { .. }));
        let two = exists_coloring(&g, &SearchConfig::new(2)).unwrap();
        assert_found_valid(&g, two);
    }

    #[test]
    fn c7_refuted_at_three_found_at_four() {
        let g = generate::cycle(7).unwrap();
        let three = exists_coloring(&g, &SearchConfig::new(3)).unwrap();
        assert!(matches!(three, SearchOutcome::Unsat { .. }));
        let four = exists_coloring(&g, &SearchConfig::new(4)).unwrap();
        assert_found_valid(&g, four);
    }

    #[test]
    fn pigeonhole_short_circuits() {
        let g = generate::cycle(15).unwrap();
        assert_eq!(
            exists_coloring(&g, &SearchConfig::new(3)).unwrap(),
            SearchOutcome::Unsat { nodes: 0 }
        );
    }

    #[test]
    fn inadmissible_graph_is_an_error() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            exists_coloring(&g, &SearchConfig::new(3)),
            Err(SolverError::Graph(GraphError::Inadmissible(0)))
        ));
    }

    #[test]
    fn witnesses_are_deterministic() {
        let g = generate::cycle(5).unwrap();
        let a = exists_coloring(&g, &SearchConfig::new(3)).unwrap();
        let b = exists_coloring(&g, &SearchConfig::new(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_cut_is_reported_as_such() {
        let g = generate::cycle(7).unwrap();
        let cfg = SearchConfig::new(3).with_node_limit(5);
        match exists_coloring(&g, &cfg).unwrap() {
            SearchOutcome::BudgetExceeded { nodes } => assert!(nodes >= 5),
            other => panic!("expected budget cut, got {other:?}"),
        }
    }

    #[test]
    fn symmetry_off_agrees_on_small_instances() {
        for g in [
            generate::path(3).unwrap(),
            generate::path(4).unwrap(),
            generate::path(5).unwrap(),
            generate::cycle(3).unwrap(),
            generate::cycle(4).unwrap(),
            generate::complete(4).unwrap(),
        ] {
            for k in 1..=4 {
                let on = exists_coloring(&g, &SearchConfig::new(k)).unwrap();
                let off =
                    exists_coloring(&g, &SearchConfig::new(k).without_symmetry_breaking())
                        .unwrap();
                assert_eq!(
                    matches!(on, SearchOutcome::Found(_)),
                    matches!(off, SearchOutcome::Found(_)),
                    "disagreement at n = {}, k = {k}",
                    g.n()
                );
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = generate::cycle(7).unwrap();
        for k in [3, 4] {
            let cfg = SearchConfig::new(k);
            let seq = exists_coloring(&g, &cfg).unwrap();
            let par = exists_coloring_jobs(&g, &cfg, 4).unwrap();
            match (seq, par) {
                (SearchOutcome::Found(a), SearchOutcome::Found(b)) => assert_eq!(a, b),
                (SearchOutcome::Unsat { .. }, SearchOutcome::Unsat { .. }) => {}
                (s, p) => panic!("sequential {s:?} vs parallel {p:?}"),
            }
        }
    }

    // ------------------------------------------------------------------
    // chi_union
    // ------------------------------------------------------------------

    #[test]
    fn chi_of_triangle_is_three() {
        let g = generate::cycle(3).unwrap();
        match chi_union(&g, None).unwrap() {
            ChiResult::Proved { value, witness } => {
                assert_eq!(value, 3);
                assert!(verify(&g, &witness).unwrap().valid);
            }
            other => panic!("expected proof, got {other:?}"),
        }
    }

    #[test]
    fn chi_of_c7_is_four() {
        let g = generate::cycle(7).unwrap();
        match chi_union(&g, None).unwrap() {
            ChiResult::Proved { value, .. } => assert_eq!(value, 4),
            other => panic!("expected proof, got {other:?}"),
        }
    }

    #[test]
    fn chi_of_k7_is_four() {
        let g = generate::complete(7).unwrap();
        match chi_union(&g, None).unwrap() {
            ChiResult::Proved { value, witness } => {
                assert_eq!(value, 4);
                assert!(verify(&g, &witness).unwrap().valid);
            }
            other => panic!("expected proof, got {other:?}"),
        }
    }

    #[test]
    fn chi_budget_gives_interval() {
        let g = generate::complete(7).unwrap();
        match chi_union(&g, Some(3)).unwrap() {
            ChiResult::Interval { lo, hi } => {
                assert_eq!(lo, 3);
                assert_eq!(hi, 5);
            }
            other => panic!("expected interval, got {other:?}"),
        }
    }

    // ------------------------------------------------------------------
    // Seed search
    // ------------------------------------------------------------------

    #[test]
    fn seed_for_c15_exists_at_four_colors() {
        let seed = find_seed_coloring(15, 4).unwrap().expect("seed exists");
        assert_eq!(seed.k(), 4);
        let g = generate::cycle(15).unwrap();
        assert!(verify(&g, seed.coloring()).unwrap().valid);
    }

    #[test]
    fn no_seed_for_c7_at_three_colors() {
        assert_eq!(find_seed_coloring(7, 3).unwrap(), None);
    }

    #[test]
    fn no_seed_for_c15_at_three_colors() {
        assert_eq!(find_seed_coloring(15, 3).unwrap(), None);
    }
}
