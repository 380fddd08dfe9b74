use super::params::BosonParams;
use crate::gain::PhaseGain;
use crate::{Error, Result};

/// Phase-dependent gain g_M(φ_T) = |1 + iW_A e^{2iφ_T}/W_b*|²
/// = 1 + 2η_A·cos(2φ_T + φ_A) + η_A², with η_A·e^{iφ_A} = iW_A/W_b*
/// evaluated at the supplied magnon number.
///
/// Errors when |W_A| ≥ |W_b| (above pump threshold).
pub fn boson_gain(p: &BosonParams, e_context: f64) -> Result<PhaseGain> {
    p.validate()?;
    let w_b = p.w_b(e_context);
    let w_a = p.w_a();
    if w_a.abs() >= w_b.norm() {
        return Err(Error::AboveThreshold(format!(
            "|W_A| = {:.6} ≥ |W_b| = {:.6}: the parallel pump exceeds the \
             magnon damping",
            w_a.abs(),
            w_b.norm()
        )));
    }
    let ratio = num_complex::Complex64::I * w_a / w_b.conj();
    Ok(PhaseGain {
        eta: ratio.norm(),
        phase: ratio.arg(),
    })
}

/// Small-anisotropy limit of the gain modulation depth:
/// η_A = ω_A·Ω_L1 / (2ω_K·√(Ω_d² + γ²)).
pub fn eta_a_small_anisotropy(p: &BosonParams) -> f64 {
    let od = p.omega_d_detuning();
    p.omega_a * p.pump_l1 / (2.0 * p.omega_k * (od * od + p.gamma() * p.gamma()).sqrt())
}

/// Exchange-dispersion validity cutoff ω_D = ω_M·λ_ex·(2π/R_s)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeCutoff {
    pub omega_d_cutoff: f64,
}

impl ExchangeCutoff {
    /// The uniform-magnetization treatment holds while
    /// max(|ω_d|, |ω_f|) ≲ ω_D.
    pub fn uniform_mode_valid(&self, omega_d: f64, omega_f: f64) -> bool {
        omega_d.abs().max(omega_f.abs()) <= self.omega_d_cutoff
    }
}

/// Cutoff from the magnetization rate ω_M, exchange constant λ_ex (length²),
/// and sphere radius R_s.
pub fn exchange_cutoff(omega_m: f64, lambda_ex: f64, r_s: f64) -> Result<ExchangeCutoff> {
    if omega_m <= 0.0 || lambda_ex <= 0.0 || r_s <= 0.0 {
        return Err(Error::invalid("exchange_cutoff requires positive inputs"));
    }
    let k = 2.0 * std::f64::consts::PI / r_s;
    Ok(ExchangeCutoff {
        omega_d_cutoff: omega_m * lambda_ex * k * k,
    })
}

/// Dimensionless exchange-dispersion parameter ε_ex = ω_M·λ_ex·k²/ω₀.
pub fn epsilon_ex(omega_m: f64, lambda_ex: f64, k: f64, omega0: f64) -> f64 {
    omega_m * lambda_ex * k * k / omega0
}
