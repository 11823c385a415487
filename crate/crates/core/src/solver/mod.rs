//! Independent oracles and generic coloring tools: exact chromatic and
//! independence numbers for small graphs, greedy first-fit, the cover
//! combiner and random list coloring.

mod cover;
mod exact;
mod explicit;
mod greedy;
mod lists;

use thiserror::Error;

pub use cover::{
    cover_combine, cover_combine_kneser, external_degrees, CoverError, CoverSystem, GreedyListOracle,
    ListColoringOracle,
};
pub use exact::{
    alpha_exact, chi_exact, chi_exact_with_witness, clique_number, max_clique, ExactConfig, DEFAULT_EXACT_CAP,
};
pub use explicit::{ExplicitGraph, MAX_EXPLICIT_VERTICES};
pub use greedy::{
    greedy_coloring, greedy_explicit, greedy_extend, ColorTracker, KneserTracker, ScanTracker, UNCOLORED,
};
pub use lists::{
    list_coloring_with_retries, list_size_bound, probabilistic_list_coloring, ListAssignment, ListAttempt,
    ListColoring, ListError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has {vertices} vertices, above the exact-solver cap {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("{vertices} items exceed the materialization limit {cap}")]
    TooLarge { vertices: u64, cap: usize },
    #[error("search aborted after {0} nodes")]
    SearchLimit(u64),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}
