//! Dense complex linear algebra and angular-momentum operators.
//!
//! Everything here works on small square matrices (dimension at most 16,
//! and 4 on the hot path), so the algorithms favour accuracy over asymptotics.

mod eig;
mod matrix;
mod operators;
mod partial;

pub use eig::{hermitian_eig, matrix_exp_hermitian, singular_values, unitary_exp, HermitianEig, MAX_EIG_DIM};
pub use matrix::{ComplexMatrix, HERMITIAN_TOL, I, ONE, ZERO};
pub use operators::{spin_operators, SpinOperators, SpinSystem};
pub use partial::{partial_trace, Subsystem};

pub(crate) use partial::partial_trace_unchecked;
