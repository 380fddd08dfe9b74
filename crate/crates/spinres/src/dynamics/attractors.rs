use num_complex::Complex64;
use rayon::prelude::*;

use super::evolve::{evolve, Frame, InvariantReport, Trajectory};
use super::params::{DisentanglementConfig, DissipationParams, DrivenSpinParams};
use crate::hilbert::DensityMatrix;
use crate::{Error, Result};

/// A direction on the Bloch sphere; defines the pure product state with
/// every spin aligned along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDirection {
    /// Polar angle from +z.
    pub theta: f64,
    /// Azimuth from +x.
    pub phi: f64,
}

impl BlochDirection {
    pub fn new(theta: f64, phi: f64) -> Self {
        BlochDirection { theta, phi }
    }

    /// n equally spaced directions around the equator.
    pub fn equator_grid(n: usize) -> Vec<BlochDirection> {
        (0..n)
            .map(|k| BlochDirection {
                theta: std::f64::consts::FRAC_PI_2,
                phi: 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            })
            .collect()
    }

    /// |n̂⟩^{⊗L} as a density matrix.
    pub fn product_state(&self, spins: usize) -> Result<DensityMatrix> {
        if spins < 1 {
            return Err(Error::invalid("spin count must be at least 1"));
        }
        let up = (0.5 * self.theta).cos();
        let down = Complex64::from_polar((0.5 * self.theta).sin(), self.phi);
        let single = [Complex64::new(up, 0.0), down];
        let mut state = single.to_vec();
        for _ in 1..spins {
            let mut next = Vec::with_capacity(state.len() * 2);
            for a in &state {
                for b in &single {
                    next.push(a * b);
                }
            }
            state = next;
        }
        DensityMatrix::pure(&state, vec![2; spins])
    }
}

/// One locally stable steady state found by trajectory clustering.
#[derive(Debug, Clone)]
pub struct Attractor {
    /// Endpoint magnetization of the representative trajectory.
    pub magnetization: [f64; 3],
    /// Oscillation phase φ = arg⟨S₊⟩ in the frame rotating at ω_T.
    pub phase: f64,
    pub state: DensityMatrix,
}

/// Attractors plus the per-initial-state basin assignment (`None` when a
/// trajectory had not converged by t_end).
#[derive(Debug, Clone)]
pub struct AttractorReport {
    pub attractors: Vec<Attractor>,
    pub basin_labels: Vec<Option<usize>>,
    /// Worst case over all trajectories.
    pub invariants: InvariantReport,
}

impl AttractorReport {
    pub fn converged_count(&self) -> usize {
        self.basin_labels.iter().flatten().count()
    }
}

/// Magnetization-space distance below which endpoints belong to one
/// attractor, per spin.
pub const CLUSTER_THRESHOLD_PER_SPIN: f64 = 0.05;

/// Evolve each initial product state to t_end and cluster the endpoints.
///
/// Trajectories run concurrently; clustering and labels follow the input
/// order deterministically. A trajectory whose magnetization still drifts by
/// more than 0.01·L over the last tenth of the run is flagged unconverged
/// and assigned no basin.
#[allow(clippy::too_many_arguments)]
pub fn find_attractors(
    p: &DrivenSpinParams,
    d: &DissipationParams,
    cfg: &DisentanglementConfig,
    initial_grid: &[BlochDirection],
    t_end: f64,
    dt: f64,
    frame: Frame,
) -> Result<AttractorReport> {
    if initial_grid.is_empty() {
        return Err(Error::invalid("find_attractors needs at least one state"));
    }
    let runs: Vec<Result<Trajectory>> = initial_grid
        .par_iter()
        .map(|dir| {
            let rho0 = dir.product_state(p.spins)?;
            evolve(&rho0, p, d, cfg, t_end, dt, frame)
        })
        .collect();

    let mut attractors: Vec<Attractor> = Vec::new();
    let mut labels: Vec<Option<usize>> = Vec::with_capacity(runs.len());
    let threshold = CLUSTER_THRESHOLD_PER_SPIN * p.spins as f64;
    let mut invariants = InvariantReport {
        max_step_trace_error: 0.0,
        max_step_hermiticity_residual: 0.0,
        min_eigenvalue: f64::INFINITY,
        max_magnetization_norm: 0.0,
        dt,
    };

    for run in runs {
        let traj = run?;
        invariants.max_step_trace_error = invariants
            .max_step_trace_error
            .max(traj.invariants.max_step_trace_error);
        invariants.max_step_hermiticity_residual = invariants
            .max_step_hermiticity_residual
            .max(traj.invariants.max_step_hermiticity_residual);
        invariants.min_eigenvalue = invariants.min_eigenvalue.min(traj.invariants.min_eigenvalue);
        invariants.max_magnetization_norm = invariants
            .max_magnetization_norm
            .max(traj.invariants.max_magnetization_norm);
        let m = traj.final_magnetization();
        if !has_converged(&traj, p.spins) {
            labels.push(None);
            continue;
        }
        let found = attractors
            .iter()
            .position(|a| distance(&a.magnetization, &m) < threshold);
        match found {
            Some(idx) => labels.push(Some(idx)),
            None => {
                let phase = traj.final_s_plus_rotating().arg();
                attractors.push(Attractor {
                    magnetization: m,
                    phase,
                    state: traj.final_state.clone(),
                });
                labels.push(Some(attractors.len() - 1));
            }
        }
    }
    Ok(AttractorReport {
        attractors,
        basin_labels: labels,
        invariants,
    })
}

fn has_converged(traj: &Trajectory, spins: usize) -> bool {
    let n = traj.times.len();
    if n < 4 {
        return true;
    }
    let t_end = *traj.times.last().unwrap();
    let probe = t_end * 0.9;
    let idx = traj
        .times
        .iter()
        .position(|&t| t >= probe)
        .unwrap_or(n - 1)
        .min(n - 2);
    let drift = distance(&traj.magnetization[idx], &traj.magnetization[n - 1]);
    drift < 0.01 * spins as f64
}

fn distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}
