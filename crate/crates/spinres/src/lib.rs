//! Numerical models of a parametrically driven spin resonator.
//!
//! Two competing descriptions of the same driven spin system live here:
//!
//! * [`dynamics`] — the exact nonlinear (disentanglement) master equation for
//!   small spin counts, with attractor/basin analysis, together with the
//!   dense-operator substrate in [`hilbert`];
//! * [`rapid`] — the rapid-disentanglement mean-field limit: Bloch-type ODEs,
//!   the cubic steady-state polynomial, bistability-onset and peak-point
//!   algebra, and phase-dependent parametric gain;
//! * [`boson`] — the Holstein–Primakoff (bosonization) mean-field model: the
//!   magnon-number cubic, its bistability threshold, and the matching gain.
//!
//! All frequencies are angular rates with ħ = 1; single-spin operators are in
//! units of ħ/2 (S_z eigenvalues ±1 per spin).

pub mod boson;
pub mod cubic;
pub mod dynamics;
mod error;
pub mod gain;
pub mod hilbert;
pub mod rapid;

pub use error::{Error, Result};
