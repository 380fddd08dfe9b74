//! Rapid-disentanglement mean-field model: Bloch-type ODEs for the
//! polarization (P₊, P₋, P_z), the cubic steady-state equation for
//! z = P_z/P_z0, bistability-onset and peak-point algebra, and the
//! phase-dependent parametric gain.

mod flow;
mod gain;
mod onset;
mod params;
mod steady;

pub use flow::{integrate_rd, rd_rhs, RdState, RdTrajectory};
pub use gain::{
    effective_damping_eigenvalues, gain_phase, m_d_matrix, m_t_eigenvalues, m_t_matrix, phase_gain,
};
pub use onset::{bistability_onset, infer_d_from_onset, peak_point, OnsetPoint, PeakPoint};
pub use params::{derive_dimensionless, derive_dimensionless_first_order, RdDimensionless, RdRaw};
pub use steady::{
    cubic_coefficients, f_polynomial, steady_state_z, steady_state_z_for, SteadyRoot, SteadyStates,
};
