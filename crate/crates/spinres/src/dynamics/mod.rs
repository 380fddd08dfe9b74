//! The modified (disentanglement) master equation for driven spins:
//! Hamiltonian builders, thermal Lindblad dissipator, the nonlinear
//! disentanglement term, fixed-step integration, and attractor/basin
//! analysis.

mod attractors;
mod disentangle;
mod evolve;
mod hamiltonian;
mod lindblad;
mod params;

pub use attractors::{
    find_attractors, Attractor, AttractorReport, BlochDirection, CLUSTER_THRESHOLD_PER_SPIN,
};
pub use disentangle::{
    build_theta, disentanglement_term, disentanglement_term_with, RelativeEntropyTheta,
    ThetaBuilder,
};
pub use evolve::{
    default_dt, evolve, evolve_with_theta, mme_rhs, Frame, InvariantReport, Trajectory,
};
pub use hamiltonian::{
    build_hamiltonian, build_two_spin_hamiltonian, build_two_spin_rwa, RWA_MARGIN,
};
pub use lindblad::lindblad_dissipator;
pub use params::{DisentanglementConfig, DissipationParams, DrivenSpinParams};
