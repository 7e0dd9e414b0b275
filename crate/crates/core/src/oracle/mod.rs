//! Brute-force oracles used to cross-check the randomized decisions.
//!
//! Everything here is exact and slow: Schubert polynomials by divided
//! differences, Schur and Schur-Q expansions by leading-term elimination,
//! and the determinant criterion expanded symbolically.

pub mod poly;
pub mod schubert;
pub mod symbolic;
pub mod symfun;

use thiserror::Error;

use crate::decide::DecideError;
use crate::weyl::LieType;

pub use poly::Poly;
pub use schubert::{schubert_coeff_a, schubert_poly};
pub use symbolic::{symbolic_matrix, symbolic_vanishing, SymbolicMatrix};
pub use symfun::{pschur_coeff, qschur_coeff, schur_lr_coeff};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("Schubert polynomials are only implemented in type A, got {0}")]
    NotTypeA(LieType),
    #[error("d = {d} exceeds the symbolic limit {max}")]
    TooLarge { d: usize, max: usize },
    #[error("the dimension condition fails, so there is no square matrix")]
    DimensionCondition,
    #[error("the nilradical is trivial")]
    Trivial,
    #[error(transparent)]
    Decide(#[from] DecideError),
}
