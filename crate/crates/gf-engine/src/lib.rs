//! Generating-function extraction and verification: exact series, rational
//! reconstruction with a mandatory held-out tail, the algebraic systems of
//! substitution closures, inclusion-exclusion over property sets, growth
//! estimates, and the growth-rate threshold κ.

use thiserror::Error;

mod fit;
mod growth;
mod inclex;
mod series;
mod system;

pub use fit::{fit_rational, growth_rate};
pub use growth::{kappa, Kappa};
pub use inclex::{inclusion_exclusion, sum_over_supersets};
pub use series::Series;
pub use system::{class_series, closure_system, solve_series, AlgebraicSystem};

#[derive(Debug, Error)]
pub enum GfError {
    #[error("series horizon {have} is below the required {need}")]
    InsufficientHorizon { have: usize, need: usize },
    #[error("series is identically zero")]
    ZeroSeries,
    #[error("a simple member of length {length} sits at the search bound; the system would be incomplete")]
    SimplesAtBound { length: usize },
    #[error("fixed-point iteration failed to stabilize; the system is ill founded")]
    IllFoundedSystem,
    #[error("missing table entry for {0}")]
    MissingVariable(String),
    #[error(transparent)]
    Class(#[from] class_engine::ClassError),
    #[error(transparent)]
    Automaton(#[from] lang_automata::AutomatonError),
}
