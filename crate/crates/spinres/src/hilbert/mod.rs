//! Dense complex linear algebra for small Hilbert spaces: operators, tensor
//! products, partial traces, a Hermitian Jacobi eigensolver, and a
//! floor-regularized matrix logarithm.

mod density;
mod eig;
mod matrix;
mod spin;

pub use density::{
    matrix_log_psd, partial_trace, reduced_states, tensor_product, DensityMatrix, HERMITICITY_TOL,
    MIN_EIGENVALUE_TOL, TRACE_TOL,
};
pub use eig::{hermitian_eig, min_eigenvalue};
pub use matrix::ComplexMatrix;
pub use spin::{collective_spin_ops, PerSpinOps, SpinOperatorSet, MAX_SPINS};

pub(crate) use density::log_of_hermitian;
