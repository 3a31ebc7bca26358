//! Numeric covariance-equivalence machinery on sparse precision factors.

mod equiv;
mod factor;
mod sem;
mod solver;

pub use equiv::{
    covariance_equiv_numeric, DirectionResiduals, EquivOptions, EquivVerdict, Verdict, HEURISTIC_NOTE,
};
pub use factor::{
    givens_flip_edge, givens_flip_factor, precision_from_factor, random_factor, relabel_column,
    FactorMatrix, DIAGONAL_FLOOR, RANK_TOLERANCE,
};
pub use sem::{factor_from_sem, precision_from_sem, random_sem, SemParams};
pub use solver::{orth_feasibility, OrthProblem, OrthResult, OrthSolverConfig};
