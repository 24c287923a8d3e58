//! Union vertex-distinguishing edge colorings.
//!
//! An edge coloring here assigns every edge a non-empty set of colors from
//! a palette `{1, ..., k}`. Each vertex is identified by its code: the
//! union of the sets on its incident edges. A coloring is valid when all
//! codes are pairwise distinct, and the invariant of interest is the
//! smallest palette admitting a valid coloring.
//!
//! Any graph whose components all have at least 3 vertices admits one, and
//! `ceil(log2(n + 1))` colors are necessary because the `n` codes are
//! distinct non-empty subsets. The crate provides:
//!
//! - exact constructions for paths, cycles, and complete binary trees
//!   ([`path`], [`cycle`], [`cbt`]) that meet the lower bound or miss it
//!   by one;
//! - a general construction ([`stars`]) within two of the lower bound,
//!   via decomposition into small star forests;
//! - an exhaustive solver ([`solver`]) for small instances, used both to
//!   compute the invariant exactly and to cross-check the constructions;
//! - graph/coloring types, generators, verification, and text, JSON, and
//!   DOT formats ([`graph`], [`coloring`], [`generate`], [`io`]).

pub mod colorset;
pub mod graph;
pub mod coloring;
pub mod generate;
pub mod path;
pub mod cycle;
pub mod cbt;
pub mod io;
pub mod solver;
pub mod stars;

pub use cbt::{color_cbt, CbtColoring, CbtError};
pub use coloring::{code, verify, Coloring, ColoringError, VerifyReport};
pub use colorset::{ColorSet, MAX_COLORS};
pub use cycle::{
    color_cycle, color_cycle_with_seed, CycleColoring, CycleError, CycleSeedColoring,
};
pub use generate::{generate, Family, GenerateError};
pub use graph::{lower_bound, lower_bound_for_order, Graph, GraphError};
pub use path::{color_path, PathColoring, PathError};
pub use stars::{
    color_1star, color_general, combine_disjoint, decompose_1stars, lift_to_supergraph,
    merge_two_kgraphs, Branch, ColoredSubgraph, KGraphTag, OneStar, StarForest, StarsError,
};
pub use solver::{
    chi_union, exists_coloring, ChiResult, SearchConfig, SearchOutcome, SolverError,
};
