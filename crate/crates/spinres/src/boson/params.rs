use num_complex::Complex64;

use crate::{Error, Result};

/// Rates of the bosonized mean-field model.
///
/// Damping splits into feedline coupling γ₁ and intrinsic loss γ₂
/// (γ = γ₁ + γ₂) plus the nonlinear rate γ₃; the transverse drive has
/// amplitude ω_T1 (rate units) and phase φ_T; the parallel pump enters via
/// W_A = (ϱ/2)(ω_A/ω_K)Ω_L1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonParams {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub omega_k: f64,
    pub omega_a: f64,
    /// Longitudinal (parallel pumping) amplitude Ω_L1.
    pub pump_l1: f64,
    pub omega_t: f64,
    pub omega0: f64,
    pub omega_f: f64,
    /// Spin count L (enters the detuning through L·ω_K).
    pub spins: usize,
    /// Transverse drive amplitude ω_T1.
    pub omega_t1: f64,
    pub phi_t: f64,
}

impl BosonParams {
    pub fn validate(&self) -> Result<()> {
        if self.gamma1 < 0.0 || self.gamma2 < 0.0 || self.gamma3 < 0.0 {
            return Err(Error::invalid("damping rates must be nonnegative"));
        }
        if self.omega_a.abs() >= self.omega_k.abs() {
            return Err(Error::invalid(
                "the bosonized frame transform requires |ω_A| < |ω_K|",
            ));
        }
        if self.omega_t1 < 0.0 {
            return Err(Error::invalid("drive amplitude ω_T1 must be nonnegative"));
        }
        Ok(())
    }

    /// Total linear damping γ = γ₁ + γ₂.
    pub fn gamma(&self) -> f64 {
        self.gamma1 + self.gamma2
    }

    pub fn ratio(&self) -> f64 {
        self.omega_a / self.omega_k
    }

    pub fn rho_factor(&self) -> f64 {
        1.0 / (1.0 - self.ratio() * self.ratio()).sqrt()
    }

    /// Ω_d = ω_T − ω₀ + L·ω_K.
    pub fn omega_d_detuning(&self) -> f64 {
        self.omega_t - self.omega0 + self.spins as f64 * self.omega_k
    }

    /// W_A = (ϱ/2)(ω_A/ω_K)Ω_L1.
    pub fn w_a(&self) -> f64 {
        0.5 * self.rho_factor() * self.ratio() * self.pump_l1
    }

    /// Complex magnon rate W_b at magnon number E = β₊β₋:
    /// i(ω_T − ϱω₀ + Lω_K/ϱ − ϱ³ω_K(1 + (ω_A/ω_K)²/2)E) − γ − γ₃E.
    ///
    /// The Kerr slope is normalized so the driven steady state satisfies the
    /// magnon-number cubic E[(Ω_d − ω_K E)² + (γ + γ₃E)²] = 2γ₁Ω₁, which
    /// also fixes the bistability-threshold closed forms.
    pub fn w_b(&self, e: f64) -> Complex64 {
        let rho = self.rho_factor();
        let r = self.ratio();
        let detuning = self.omega_t - rho * self.omega0 + self.spins as f64 * self.omega_k / rho
            - rho.powi(3) * self.omega_k * (1.0 + 0.5 * r * r) * e;
        Complex64::new(-self.gamma() - self.gamma3 * e, detuning)
    }

    /// W_b to O(ω_A²): i(Ω_d − ω_K E) − γ − γ₃E.
    pub fn w_b_approx(&self, e: f64) -> Complex64 {
        Complex64::new(
            -self.gamma() - self.gamma3 * e,
            self.omega_d_detuning() - self.omega_k * e,
        )
    }
}
