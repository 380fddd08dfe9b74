use num_complex::Complex64;

use crate::{Error, Result};

/// Hamiltonian and driving rates of the driven L-spin system.
///
/// The longitudinal field is ω_z(t) = ω₀ + Ω_L1·cos(2(ω_T + ω_f)t) with
/// ω_T = ω₀ + ω_d; the transverse drive is Ω_T1 = |Ω_T1|e^{iφ_T}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivenSpinParams {
    pub omega0: f64,
    pub omega_k: f64,
    pub omega_a: f64,
    /// Transverse drive detuning ω_d (ω_T = ω₀ + ω_d).
    pub omega_d: f64,
    /// Longitudinal drive detuning ω_f.
    pub omega_f: f64,
    /// Longitudinal (parallel pumping) amplitude Ω_L1.
    pub pump_l1: f64,
    /// |Ω_T1|.
    pub drive_t1_mag: f64,
    /// Drive phase φ_T.
    pub phi_t: f64,
    /// Spin count L.
    pub spins: usize,
}

impl DrivenSpinParams {
    pub fn validate(&self) -> Result<()> {
        if self.spins < 1 {
            return Err(Error::invalid("spin count must be at least 1"));
        }
        if self.drive_t1_mag < 0.0 {
            return Err(Error::invalid("|Ω_T1| must be nonnegative"));
        }
        let vals = [
            self.omega0,
            self.omega_k,
            self.omega_a,
            self.omega_d,
            self.omega_f,
            self.pump_l1,
            self.drive_t1_mag,
            self.phi_t,
        ];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("all rates must be finite"));
        }
        Ok(())
    }

    pub fn omega_t(&self) -> f64 {
        self.omega0 + self.omega_d
    }

    /// Longitudinal pump frequency ω_L = 2(ω_T + ω_f).
    pub fn omega_l(&self) -> f64 {
        2.0 * (self.omega_t() + self.omega_f)
    }

    pub fn omega_z(&self, t: f64) -> f64 {
        self.omega0 + self.pump_l1 * (self.omega_l() * t).cos()
    }

    pub fn drive_t1(&self) -> Complex64 {
        Complex64::from_polar(self.drive_t1_mag, self.phi_t)
    }
}

/// Thermal Lindblad rates: energy relaxation Γ₁, dephasing Γ_φ, occupation
/// n̂₀, with 1/T1 = Γ₁(2n̂₀+1) and 1/T2 = 1/(2T1) + Γ_φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipationParams {
    pub gamma1: f64,
    pub gamma_phi: f64,
    pub n0: f64,
}

impl DissipationParams {
    pub fn from_rates(gamma1: f64, gamma_phi: f64, n0: f64) -> Result<Self> {
        let d = DissipationParams {
            gamma1,
            gamma_phi,
            n0,
        };
        d.validate()?;
        Ok(d)
    }

    /// Convert (T1, T2, n̂₀); rejects T2 > 2T1, which would need negative
    /// dephasing.
    pub fn from_times(t1: f64, t2: f64, n0: f64) -> Result<Self> {
        if t1 <= 0.0 || t2 <= 0.0 {
            return Err(Error::invalid("T1 and T2 must be positive"));
        }
        let gamma_phi = 1.0 / t2 - 0.5 / t1;
        if gamma_phi < -1e-12 / t2 {
            return Err(Error::invalid(format!(
                "T2 = {t2} exceeds 2·T1 = {}: no nonnegative dephasing rate",
                2.0 * t1
            )));
        }
        Self::from_rates(1.0 / (t1 * (2.0 * n0 + 1.0)), gamma_phi.max(0.0), n0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma1 < 0.0 || self.gamma_phi < 0.0 || self.n0 < 0.0 {
            return Err(Error::invalid(
                "Γ₁, Γ_φ and n̂₀ must all be nonnegative",
            ));
        }
        Ok(())
    }

    pub fn t1(&self) -> f64 {
        1.0 / (self.gamma1 * (2.0 * self.n0 + 1.0))
    }

    pub fn t2(&self) -> f64 {
        1.0 / (0.5 / self.t1() + self.gamma_phi)
    }

    pub fn is_zero(&self) -> bool {
        self.gamma1 == 0.0 && self.gamma_phi == 0.0
    }
}

/// Disentanglement channel: rate γ_D, subsystem partition, and the
/// eigenvalue floor used inside the matrix logarithms.
#[derive(Debug, Clone, PartialEq)]
pub struct DisentanglementConfig {
    pub gamma_d: f64,
    pub partition: Vec<usize>,
    pub eps: f64,
}

impl DisentanglementConfig {
    pub fn new(gamma_d: f64, partition: Vec<usize>) -> Result<Self> {
        let cfg = DisentanglementConfig {
            gamma_d,
            partition,
            eps: 1e-12,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Per-spin partition for L spins 1/2.
    pub fn per_spin(gamma_d: f64, spins: usize) -> Result<Self> {
        Self::new(gamma_d, vec![2; spins])
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma_d < 0.0 {
            return Err(Error::invalid("γ_D must be nonnegative"));
        }
        if self.eps <= 0.0 {
            return Err(Error::invalid("eigenvalue floor eps must be positive"));
        }
        if self.partition.is_empty() || self.partition.iter().any(|&d| d == 0) {
            return Err(Error::invalid("partition dims must be positive"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.partition.iter().product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_rate_round_trip() {
        let d = DissipationParams::from_times(0.2, 0.1, 0.5).unwrap();
        assert!((d.t1() - 0.2).abs() < 1e-14);
        assert!((d.t2() - 0.1).abs() < 1e-14);
    }

    #[test]
    fn equal_times_imply_half_rate_dephasing() {
        // T1 = T2 requires Γ_φ = 1/(2T1) at any n̂₀
        let d = DissipationParams::from_times(0.2, 0.2, 0.0).unwrap();
        assert!((d.gamma_phi - 2.5).abs() < 1e-12);
    }

    #[test]
    fn t2_beyond_motional_limit_rejected() {
        assert!(DissipationParams::from_times(0.1, 0.3, 0.0).is_err());
    }

    #[test]
    fn omega_z_modulation() {
        let p = DrivenSpinParams {
            omega0: 5.0,
            omega_k: 0.0,
            omega_a: 1.0,
            omega_d: 0.0,
            omega_f: 0.0,
            pump_l1: 1.5,
            drive_t1_mag: 0.0,
            phi_t: 0.0,
            spins: 2,
        };
        assert!((p.omega_z(0.0) - 6.5).abs() < 1e-15);
        let quarter = std::f64::consts::PI / (2.0 * p.omega_l());
        assert!((p.omega_z(quarter) - 5.0).abs() < 1e-12);
    }
}
