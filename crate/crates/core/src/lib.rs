//! Varchenko determinants of finite Coxeter arrangements.
//!
//! The crate enumerates a finite Coxeter group exactly, models the chambers
//! and edges of its reflection arrangement combinatorially, and produces the
//! Varchenko determinant as a closed product `prod (1 - a(E)^2)^{l(E)}` over
//! the relevant edges. Every ingredient of the edge multiplicity formula has
//! an independent brute-force counterpart so the closed form can be checked
//! against chamber counting and against modular evaluation of the full
//! Varchenko matrix.

pub mod algebra;
pub mod arrangement;
pub mod coxeter;
pub mod tables;
pub mod varchenko;

pub use algebra::{AlgebraError, ExactScalar, Factorization, Monomial, PrimeField};
