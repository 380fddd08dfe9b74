use num_complex::Complex64;

use super::params::BosonParams;
use crate::{Error, Result};

/// Mean-field equations of motion for (β₊, β₋):
/// dβ/dt = M_β(β₊β₋, t)·β + √(2γ₁ω_T1)·(ie^{−iφ_T}, −ie^{iφ_T})ᵀ,
/// with the exact (all orders in ω_A/ω_K) W_b on the diagonal.
pub fn mean_field_rhs(beta: (Complex64, Complex64), t: f64, p: &BosonParams) -> (Complex64, Complex64) {
    let e = (beta.0 * beta.1).re;
    let w_b = p.w_b(e);
    let w_a = p.w_a();
    let i = Complex64::I;
    let pump_m = i * w_a * Complex64::from_polar(1.0, -2.0 * p.omega_f * t);
    let pump_p = i * w_a * Complex64::from_polar(1.0, 2.0 * p.omega_f * t);
    let drive = (2.0 * p.gamma1 * p.omega_t1).sqrt();
    let d_plus =
        w_b * beta.0 + pump_m * beta.1 + drive * i * Complex64::from_polar(1.0, -p.phi_t);
    let d_minus =
        -pump_p * beta.0 + w_b.conj() * beta.1 - drive * i * Complex64::from_polar(1.0, p.phi_t);
    (d_plus, d_minus)
}

#[derive(Debug, Clone)]
pub struct BosonTrajectory {
    pub times: Vec<f64>,
    pub betas: Vec<(Complex64, Complex64)>,
    /// |β|² exceeded the divergence bound before t_end.
    pub diverged: bool,
}

impl BosonTrajectory {
    pub fn final_beta(&self) -> (Complex64, Complex64) {
        *self.betas.last().expect("at least the initial sample")
    }

    /// Magnon number E = β₊β₋ at the endpoint.
    pub fn final_e(&self) -> f64 {
        let (bp, bm) = self.final_beta();
        (bp * bm).re
    }
}

/// Fixed-step RK4 integration of the mean-field flow.
pub fn integrate_mean_field(
    beta0: (Complex64, Complex64),
    p: &BosonParams,
    t_end: f64,
    dt: f64,
    divergence_e: f64,
) -> Result<BosonTrajectory> {
    p.validate()?;
    if dt <= 0.0 || t_end < 0.0 {
        return Err(Error::invalid("integrate_mean_field: dt must be positive"));
    }
    let steps = (t_end / dt).round() as usize;
    let stride = (steps / 2000).max(1);
    let mut beta = beta0;
    let mut t = 0.0;
    let mut times = vec![0.0];
    let mut betas = vec![beta0];
    let mut diverged = false;

    for step in 0..steps {
        let k1 = mean_field_rhs(beta, t, p);
        let b2 = (beta.0 + 0.5 * dt * k1.0, beta.1 + 0.5 * dt * k1.1);
        let k2 = mean_field_rhs(b2, t + 0.5 * dt, p);
        let b3 = (beta.0 + 0.5 * dt * k2.0, beta.1 + 0.5 * dt * k2.1);
        let k3 = mean_field_rhs(b3, t + 0.5 * dt, p);
        let b4 = (beta.0 + dt * k3.0, beta.1 + dt * k3.1);
        let k4 = mean_field_rhs(b4, t + dt, p);
        beta = (
            beta.0 + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            beta.1 + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        t += dt;
        if (beta.0 * beta.1).re.abs() > divergence_e {
            diverged = true;
            times.push(t);
            betas.push(beta);
            break;
        }
        if (step + 1) % stride == 0 || step + 1 == steps {
            times.push(t);
            betas.push(beta);
        }
    }
    Ok(BosonTrajectory {
        times,
        betas,
        diverged,
    })
}
