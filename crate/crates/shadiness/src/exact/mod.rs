//! Exact rational arithmetic substrate: scalars, dense linear algebra,
//! LDL factorization and sparse multivariate polynomials.

pub mod linalg;
pub mod mpoly;
pub mod rational;

pub use linalg::{ldl_decompose, solve_linear, RMatrix, RVec};
pub use mpoly::{monomial_basis, poly_expand_weighted_sum, MPoly};
pub use rational::{format_rat, parse_rat, rat, rat_int, round_to_rational, sqrt_lower, sqrt_upper, Rat};

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite (non-positive pivot)")]
    NotPositiveDefinite,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}
