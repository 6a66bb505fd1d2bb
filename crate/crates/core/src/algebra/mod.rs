//! Exact scalars, prime fields, monomials and factorizations.

pub mod minpoly;
pub mod modular;
pub mod monomial;
pub mod poly;
pub mod scalar;

use thiserror::Error;

pub use minpoly::minimal_polynomial_2cos;
pub use modular::{default_primes, det_mod_p, det_mod_scalars, ModScalar, PrimeField, DEFAULT_PRIME};
pub use monomial::{Factor, Factorization, Monomial, VarId};
pub use poly::{symbolic_det, Poly};
pub use scalar::{CyclotomicField, CyclotomicReal, ExactScalar, GoldenElement, RingKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands come from different rings")]
    MixedRings,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not defined in the integer ring")]
    NotAField,
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(VarId),
}
