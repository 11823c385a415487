//! Coloring `G(n, 4, 2)` for `n = p^2 - 1` through `GL_2(F_p)` orbits of
//! zero-sum 5-sets in general position.
//!
//! Points of `F_p^2 \ 0` are identified with `[n]` by `(x, y) -> x + p*y`.
//! Every 4-set lies in at most one 5-set of the family, so coloring the
//! family colors most of the graph: 5-sets meeting in at most one point
//! may share a color. Inside one orbit the 5-sets are colored with 20
//! colors by walking the orbit; what remains is colored greedily from a
//! separate palette.

mod cayley;
mod dependence;
mod family;
mod orbits;
mod pipeline;
mod plane;
mod residual;
mod wall;

use thiserror::Error;

use crate::algebra::{AlgebraError, FpVector};
use crate::solver::CoverError;

pub use cayley::{cayley_color_orbit, generators, slot, CayleyColoring, EGenerator, Psi, PsiError, NO_COLOR};
pub use dependence::{
    all_orderings, detect_short, enumerate_classes, eval_dependence, is_trivial, Dependence, DependenceClass,
    ShortDetector, DEFAULT_CLASS_BUDGET,
};
pub use family::{ATuple, Family, PAIRS};
pub use orbits::{orbit_decompose, OrbitDecomposition, OrbitMember, OrbitRecord};
pub use pipeline::{color_g42, g42_stats, G42Output, G42Stats, PipelineParams, PipelineReport, Routing};
pub use residual::{residual_cover, Classification, ResidualCover, VertexClass, DEFAULT_D_BUDGET};
pub use wall::{box_sets, build_wall, BoxSets, OrbitWall};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G42Error {
    #[error("p = {0} is too small; need a prime p >= 5")]
    PrimeTooSmall(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("vectors over different fields")]
    MixedModuli,
    #[error("the vectors do not sum to zero")]
    NonZeroSum,
    #[error("vectors {0} and {1} are collinear")]
    Collinear(FpVector, FpVector),
    #[error("invalid dependence: {0}")]
    BadDependence(String),
    #[error("more than {budget} dependence classes")]
    BudgetExceeded { budget: u64 },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("coloring is not proper: {violation_count} violations, e.g. {violations:?}")]
    Improper {
        violation_count: u64,
        violations: Vec<String>,
    },
}
