use num_complex::Complex64;

use super::params::RdRaw;
use crate::{Error, Result};

/// Mean-field state (P₊, P₋, P_z). Physical trajectories keep
/// P₋ = conj(P₊) and P_z real; P₊ and P₋ are carried independently so the
/// π-shift equivariance of the flow can be exercised directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdState {
    pub p_plus: Complex64,
    pub p_minus: Complex64,
    pub p_z: f64,
}

impl RdState {
    pub fn new(p_plus: Complex64, p_minus: Complex64, p_z: f64) -> Self {
        RdState {
            p_plus,
            p_minus,
            p_z,
        }
    }

    /// Transverse components from P₊ = P_x + iP_y.
    pub fn transverse(&self) -> (f64, f64) {
        (self.p_plus.re, self.p_plus.im)
    }

    pub fn norm(&self) -> f64 {
        (self.p_plus.norm_sqr() + self.p_z * self.p_z).sqrt()
    }
}

/// Right-hand side of the mean-field equations of motion, including the
/// e^{∓2iω_f t} pump phases and the Kerr-type W_K·P_z detuning shift.
pub fn rd_rhs(state: &RdState, t: f64, raw: &RdRaw) -> RdState {
    let w_d = raw.w_d();
    let w_a = raw.w_a();
    let w_k = raw.w_k();
    let w_t1 = raw.w_t1();
    let rho = raw.rho_factor();
    let i = Complex64::I;

    let det = Complex64::new(0.0, w_d - w_k * state.p_z);
    let pump_m = i * w_a * Complex64::from_polar(1.0, -2.0 * raw.omega_f * t);
    let pump_p = i * w_a * Complex64::from_polar(1.0, 2.0 * raw.omega_f * t);

    let d_plus = (det - Complex64::new(1.0 / raw.t2, 0.0)) * state.p_plus
        + pump_m * state.p_minus
        - i * state.p_z * w_t1.conj();
    let d_minus = (-det - Complex64::new(1.0 / raw.t2, 0.0)) * state.p_minus - pump_p * state.p_plus
        + i * state.p_z * w_t1;
    let d_z = (i * rho * 0.5 * (w_t1.conj() * state.p_minus - w_t1 * state.p_plus)).re
        - (state.p_z - raw.p_z0) / raw.t1;

    RdState {
        p_plus: d_plus,
        p_minus: d_minus,
        p_z: d_z,
    }
}

#[derive(Debug, Clone)]
pub struct RdTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<RdState>,
    /// Set when |P| exceeded the divergence bound; the trajectory holds the
    /// samples up to that point.
    pub diverged: bool,
}

impl RdTrajectory {
    pub fn final_state(&self) -> &RdState {
        self.states.last().expect("trajectory has at least one state")
    }
}

/// Fixed-step classical 4th-order integration of the mean-field flow.
///
/// Divergence (|P| > 10·|P_z0|·max(1, W_A·T2)) stops the run and is reported
/// on the trajectory, not as an error.
pub fn integrate_rd(p0: RdState, raw: &RdRaw, t_end: f64, dt: f64) -> Result<RdTrajectory> {
    raw.validate()?;
    if dt <= 0.0 || t_end < 0.0 {
        return Err(Error::invalid("integrate_rd: dt must be positive"));
    }
    let steps = (t_end / dt).round() as usize;
    let bound = 10.0 * raw.p_z0.abs().max(1e-12) * (raw.w_a().abs() * raw.t2).max(1.0);
    let stride = (steps / 2000).max(1);

    let mut state = p0;
    let mut t = 0.0;
    let mut times = vec![0.0];
    let mut states = vec![p0];
    let mut diverged = false;

    for step in 0..steps {
        let k1 = rd_rhs(&state, t, raw);
        let s2 = advance(&state, &k1, 0.5 * dt);
        let k2 = rd_rhs(&s2, t + 0.5 * dt, raw);
        let s3 = advance(&state, &k2, 0.5 * dt);
        let k3 = rd_rhs(&s3, t + 0.5 * dt, raw);
        let s4 = advance(&state, &k3, dt);
        let k4 = rd_rhs(&s4, t + dt, raw);

        state = RdState {
            p_plus: state.p_plus
                + dt / 6.0 * (k1.p_plus + 2.0 * k2.p_plus + 2.0 * k3.p_plus + k4.p_plus),
            p_minus: state.p_minus
                + dt / 6.0 * (k1.p_minus + 2.0 * k2.p_minus + 2.0 * k3.p_minus + k4.p_minus),
            p_z: state.p_z + dt / 6.0 * (k1.p_z + 2.0 * k2.p_z + 2.0 * k3.p_z + k4.p_z),
        };
        t += dt;
        if state.norm() > bound {
            diverged = true;
            times.push(t);
            states.push(state);
            break;
        }
        if (step + 1) % stride == 0 || step + 1 == steps {
            times.push(t);
            states.push(state);
        }
    }
    Ok(RdTrajectory {
        times,
        states,
        diverged,
    })
}

fn advance(s: &RdState, d: &RdState, h: f64) -> RdState {
    RdState {
        p_plus: s.p_plus + h * d.p_plus,
        p_minus: s.p_minus + h * d.p_minus,
        p_z: s.p_z + h * d.p_z,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_raw() -> RdRaw {
        RdRaw {
            omega0: 100.0,
            omega_k: 2.0,
            omega_a: 1.2,
            omega_d: 0.3,
            omega_f: 0.0,
            pump_l1: 0.8,
            w_t1_mag: 0.5,
            phi_t: 0.4,
            t1: 1.5,
            t2: 0.9,
            p_z0: -1.0,
        }
    }

    #[test]
    fn equilibrium_is_stationary_without_drive() {
        let mut raw = sample_raw();
        raw.w_t1_mag = 0.0;
        raw.pump_l1 = 0.0;
        let eq = RdState::new(Complex64::ZERO, Complex64::ZERO, raw.p_z0);
        let d = rd_rhs(&eq, 0.3, &raw);
        assert!(d.p_plus.norm() < 1e-15 && d.p_minus.norm() < 1e-15 && d.p_z.abs() < 1e-15);
    }

    #[test]
    fn pi_shift_equivariance() {
        // (φ_T, P₊, P₋) → (φ_T + π, −P₊, −P₋) maps flows onto each other
        let raw = sample_raw();
        let mut shifted = raw;
        shifted.phi_t += std::f64::consts::PI;
        let s = RdState::new(
            Complex64::new(0.21, -0.34),
            Complex64::new(0.21, 0.34),
            -0.6,
        );
        let s_flip = RdState::new(-s.p_plus, -s.p_minus, s.p_z);
        let d = rd_rhs(&s, 0.7, &raw);
        let d_flip = rd_rhs(&s_flip, 0.7, &shifted);
        assert!((d_flip.p_plus + d.p_plus).norm() < 1e-13);
        assert!((d_flip.p_minus + d.p_minus).norm() < 1e-13);
        assert!((d_flip.p_z - d.p_z).abs() < 1e-13);
    }

    #[test]
    fn magnon_number_rate_matches_phase_dependent_form() {
        // ω_f = 0, W_T1 = 0: dN/dt = 2(W_A sin 2φ_P − 1/T2)·N with N = P₊P₋
        let mut raw = sample_raw();
        raw.w_t1_mag = 0.0;
        let n0 = 0.04_f64;
        for &phi_p in &[0.0, 0.3, 1.1, 2.0] {
            let p = Complex64::from_polar(n0.sqrt(), phi_p);
            let s = RdState::new(p, p.conj(), raw.p_z0);
            let d = rd_rhs(&s, 0.0, &raw);
            let dn = (d.p_plus * s.p_minus + s.p_plus * d.p_minus).re;
            let expect = 2.0 * (raw.w_a() * (2.0 * phi_p).sin() - 1.0 / raw.t2) * n0;
            assert!(
                (dn - expect).abs() < 1e-12,
                "phi_p={phi_p}: dn={dn} expect={expect}"
            );
        }
    }

    #[test]
    fn below_threshold_decays_to_equilibrium() {
        let mut raw = sample_raw();
        raw.w_t1_mag = 0.0;
        assert!(raw.w_a().abs() * raw.t2 < 1.0);
        let s0 = RdState::new(
            Complex64::new(0.4, -0.1),
            Complex64::new(0.4, 0.1),
            -0.2,
        );
        let traj = integrate_rd(s0, &raw, 40.0, 1e-3).unwrap();
        assert!(!traj.diverged);
        let f = traj.final_state();
        assert!(f.p_plus.norm() < 1e-8);
        assert!((f.p_z - raw.p_z0).abs() < 1e-8);
    }

    #[test]
    fn conjugate_pairing_is_preserved() {
        let raw = sample_raw();
        let s0 = RdState::new(
            Complex64::new(0.2, 0.1),
            Complex64::new(0.2, -0.1),
            -0.5,
        );
        let traj = integrate_rd(s0, &raw, 5.0, 1e-3).unwrap();
        let f = traj.final_state();
        assert!((f.p_plus.conj() - f.p_minus).norm() < 1e-10);
    }
}
