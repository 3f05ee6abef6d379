//! Jacobian duals, their iterations, and the defining ideals they produce.

mod cramer;
mod defining;
mod diffop;
mod dual;
mod instance;
mod iterate;

use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::matrix::MatrixError;
use crate::poly::PolyError;

pub use cramer::cramer_check;
pub use defining::{
    defining_ideal, fiber_by_elimination, is_minimal_generating_set, run_defining_ideal, saturation_index_bound,
    special_fiber, DefiningIdeal,
};
pub use diffop::{apply_operator, diffop_iterations};
pub use dual::{jacobian_dual, modified_jacobian_dual, partial_column, PartialMode};
pub use instance::{InstanceIdeal, InstanceModule, Presentation};
pub use iterate::{matrix_iterations, mjd_iterations, subminor_ideal, IterationState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("entry ({row}, {col}) of the presentation is not linear in x: {entry}")]
    NotLinear { row: usize, col: usize, entry: String },
    #[error("{0} is not bihomogeneous with positive x-degree")]
    NotInVariableIdeal(String),
    #[error("x-degree {degree} is not invertible in characteristic {characteristic}")]
    DegreeNotInvertible { degree: u32, characteristic: u64 },
    #[error("determinant vanishes at step {step}; the hypotheses cannot hold")]
    VanishingDeterminant { step: usize },
    #[error("the differential operator needs characteristic 0 or above {m}, got {characteristic}")]
    Characteristic { m: u32, characteristic: u64 },
    #[error("hypotheses fail: {0}")]
    Hypothesis(String),
    #[error("no unique generator free of x: found {0}")]
    Fiber(usize),
    #[error("no passing choice within {attempts} attempts from seed {seed}")]
    RetryBudget { seed: u64, attempts: usize },
    #[error("cross-check failed with seed {seed}: {message}")]
    CrossCheck { seed: u64, message: String },
}
