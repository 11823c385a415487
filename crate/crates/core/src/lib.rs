//! Explicit proper colorings of generalized Kneser graphs `G(n, r, s)`.

pub mod algebra;
pub mod boolean31;
pub mod designs;
pub mod g42;
pub mod graph;
pub mod rng;
pub mod solver;
pub mod subsets;
