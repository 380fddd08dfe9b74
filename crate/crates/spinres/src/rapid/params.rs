use num_complex::Complex64;

use crate::{Error, Result};

/// Raw rates of the rapid-disentanglement model.
///
/// `w_t1_mag` is the transformed transverse drive magnitude |W_T1| = X·|Ω_T1|
/// (use [`RdRaw::from_transverse_drive`] to apply the X factor); `p_z0` is
/// the undriven steady-state polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdRaw {
    pub omega0: f64,
    pub omega_k: f64,
    pub omega_a: f64,
    pub omega_d: f64,
    pub omega_f: f64,
    /// Longitudinal (parallel pumping) amplitude Ω_L1.
    pub pump_l1: f64,
    /// |W_T1| = X·|Ω_T1|.
    pub w_t1_mag: f64,
    /// Relative phase φ_T between transverse and longitudinal drives.
    pub phi_t: f64,
    pub t1: f64,
    pub t2: f64,
    pub p_z0: f64,
}

impl RdRaw {
    /// Build from the bare transverse drive amplitude |Ω_T1|, applying the
    /// frame-transform factor X.
    #[allow(clippy::too_many_arguments)]
    pub fn from_transverse_drive(
        omega0: f64,
        omega_k: f64,
        omega_a: f64,
        omega_d: f64,
        omega_f: f64,
        pump_l1: f64,
        omega_t1_mag: f64,
        phi_t: f64,
        t1: f64,
        t2: f64,
        p_z0: f64,
    ) -> Result<Self> {
        let mut raw = RdRaw {
            omega0,
            omega_k,
            omega_a,
            omega_d,
            omega_f,
            pump_l1,
            w_t1_mag: 0.0,
            phi_t,
            t1,
            t2,
            p_z0,
        };
        raw.validate()?;
        raw.w_t1_mag = raw.x_factor() * omega_t1_mag.abs();
        Ok(raw)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t1 > 0.0 && self.t2 > 0.0) {
            return Err(Error::invalid("T1 and T2 must be positive"));
        }
        if self.omega_a.abs() >= self.omega_k.abs() {
            return Err(Error::invalid(
                "the X, Y, ϱ transformation requires |ω_A| < |ω_K|",
            ));
        }
        if self.w_t1_mag < 0.0 {
            return Err(Error::invalid("|W_T1| must be nonnegative"));
        }
        let vals = [
            self.omega0,
            self.omega_k,
            self.omega_a,
            self.omega_d,
            self.omega_f,
            self.pump_l1,
            self.w_t1_mag,
            self.phi_t,
            self.t1,
            self.t2,
            self.p_z0,
        ];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("all rates must be finite"));
        }
        Ok(())
    }

    pub fn ratio(&self) -> f64 {
        self.omega_a / self.omega_k
    }

    /// ϱ = 1/√(1 − (ω_A/ω_K)²).
    pub fn rho_factor(&self) -> f64 {
        1.0 / (1.0 - self.ratio() * self.ratio()).sqrt()
    }

    /// X = (√(1+ω_A/ω_K) + √(1−ω_A/ω_K))/2.
    pub fn x_factor(&self) -> f64 {
        let r = self.ratio();
        0.5 * ((1.0 + r).sqrt() + (1.0 - r).sqrt())
    }

    /// Y = (√(1+ω_A/ω_K) − √(1−ω_A/ω_K))/2.
    pub fn y_factor(&self) -> f64 {
        let r = self.ratio();
        0.5 * ((1.0 + r).sqrt() - (1.0 - r).sqrt())
    }

    pub fn omega_t(&self) -> f64 {
        self.omega0 + self.omega_d
    }

    /// W_d = ω_T − ϱω₀.
    pub fn w_d(&self) -> f64 {
        self.omega_t() - self.rho_factor() * self.omega0
    }

    /// W_A = (ϱ/2)(ω_A/ω_K)Ω_L1.
    pub fn w_a(&self) -> f64 {
        0.5 * self.rho_factor() * self.ratio() * self.pump_l1
    }

    /// W_K = ω_K/ϱ.
    pub fn w_k(&self) -> f64 {
        self.omega_k / self.rho_factor()
    }

    /// W_T1 = |W_T1|·e^{iφ_T}.
    pub fn w_t1(&self) -> Complex64 {
        Complex64::from_polar(self.w_t1_mag, self.phi_t)
    }
}

/// Dimensionless steady-state parameter set (α, δ, D, W).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdDimensionless {
    /// α = 1 − W_A²T2².
    pub alpha: f64,
    /// δ = W_d·T2.
    pub delta: f64,
    /// D = (W_K·T2·P_z0/4)².
    pub d_param: f64,
    /// Phase-dependent drive W = (1/2)ϱ|W_T1|²T1T2[1 + √(1−α)sin 2φ_T].
    pub w: f64,
    /// ϱ carried along for exact-form reconstructions.
    pub rho_factor: f64,
}

impl RdDimensionless {
    pub fn new(alpha: f64, delta: f64, d_param: f64, w: f64) -> Self {
        RdDimensionless {
            alpha,
            delta,
            d_param,
            w,
            rho_factor: 1.0,
        }
    }

    /// δ − 4√D·z, the effective dimensionless detuning at polarization z.
    pub fn detuning_at(&self, z: f64) -> f64 {
        self.delta - 4.0 * self.d_param.sqrt() * z
    }
}

/// Exact (SM-form) dimensionless parameters, with the ϱ factor in W.
pub fn derive_dimensionless(raw: &RdRaw) -> Result<RdDimensionless> {
    raw.validate()?;
    let rho = raw.rho_factor();
    let alpha = 1.0 - (raw.w_a() * raw.t2).powi(2);
    let delta = raw.w_d() * raw.t2;
    let d_param = (raw.w_k() * raw.t2 * raw.p_z0 / 4.0).powi(2);
    let bracket = 1.0 + (1.0 - alpha).sqrt() * (2.0 * raw.phi_t).sin();
    if bracket < 0.0 {
        return Err(Error::AboveThreshold(format!(
            "W_A·T2 = {:.6} > 1 and sin 2φ_T = {:.6}: the parametric pump \
             exceeds the transverse damping and no driven steady state exists",
            (1.0 - alpha).sqrt(),
            (2.0 * raw.phi_t).sin()
        )));
    }
    let w = 0.5 * rho * raw.w_t1_mag.powi(2) * raw.t1 * raw.t2 * bracket;
    Ok(RdDimensionless {
        alpha,
        delta,
        d_param,
        w,
        rho_factor: rho,
    })
}

/// First-order-in-(ω_A/ω_K) convenience form: identical to
/// [`derive_dimensionless`] but with the ϱ prefactor of W dropped, as quoted
/// in compact presentations of the model.
pub fn derive_dimensionless_first_order(raw: &RdRaw) -> Result<RdDimensionless> {
    let mut dims = derive_dimensionless(raw)?;
    dims.w /= raw.rho_factor();
    Ok(dims)
}
