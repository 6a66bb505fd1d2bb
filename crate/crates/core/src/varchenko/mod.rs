//! The Varchenko matrix of a Coxeter arrangement, its closed-form
//! determinant, the classical special-case formulas, and modular checks
//! tying them together.

mod closed_form;
mod formulas;
mod matrix;
mod verify;
mod weights;

use thiserror::Error;

use crate::algebra::{AlgebraError, VarId};
use crate::arrangement::ArrangementError;
use crate::coxeter::CoxeterError;

pub use closed_form::{class_label, closed_form, closed_form_factorization, closed_form_with, ClosedForm, EdgeFactor};
pub use formulas::{
    b_hyperplane_dictionary, duchamp_formula_a, embed_reflections, type_b_formula, reducible_product,
    type_a_pair_dictionary, zagier_formula, BHyperplane,
};
pub use matrix::{eval_matrix_mod_p, VarchenkoMatrix, FULL_MATRIX_CAP};
pub use verify::{
    symbolic_anchor, verify_mod_p, SymbolicAnchor, Verdict, VerifyOptions, VerifyRecord, VerifyReport,
    DEFAULT_DET_BUDGET, HARD_DET_CAP, SYMBOLIC_LIMIT,
};
pub use weights::{WeightAssignment, WeightMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarchenkoError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("group of order {order} exceeds the matrix cap {cap}")]
    MatrixTooLarge { order: usize, cap: usize },
    #[error("exponent {numerator}/{denominator} is not an integer")]
    NonIntegerExponent { numerator: u128, denominator: u128 },
    #[error("exponent does not fit in 64 bits for n = {0}")]
    ExponentOverflow(usize),
    #[error("variable {0} occurs in both factors")]
    VariableCollision(VarId),
    #[error("weight file line {line}: {message}")]
    ExplicitWeights { line: usize, message: String },
    #[error("reflection {0} has no variable")]
    UnassignedReflection(usize),
    #[error("group is not of type {expected}")]
    WrongType { expected: String },
    #[error("symbolic determinant limited to order {limit}, got {order}")]
    SymbolicTooLarge { order: usize, limit: usize },
}
