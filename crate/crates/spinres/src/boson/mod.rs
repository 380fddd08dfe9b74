//! Bosonization (Holstein–Primakoff) mean-field model: the magnon-number
//! cubic steady state, its bistability threshold, the phase-dependent gain
//! g_M, and the exchange-dispersion validity cutoff.

mod flow;
mod gain;
mod hp;
mod params;
mod steady;

pub use flow::{integrate_mean_field, mean_field_rhs, BosonTrajectory};
pub use gain::{boson_gain, epsilon_ex, eta_a_small_anisotropy, exchange_cutoff, ExchangeCutoff};
pub use hp::{hp_map, HpOperators};
pub use params::BosonParams;
pub use steady::{
    bistability_threshold, magnon_cubic_coefficients, steady_state_e, steady_state_e_self_consistent,
    BistabilityThreshold, ERoot,
};
