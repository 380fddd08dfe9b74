use num_complex::Complex64;

use super::params::{derive_dimensionless, RdDimensionless, RdRaw};
use crate::cubic;
use crate::{Error, Result};

/// F(z, δ) = z(α + (δ−4√D z)² + 2W) − α − (δ−4√D z)²; steady states are its
/// zeros.
pub fn f_polynomial(dims: &RdDimensionless, z: f64, delta: f64) -> f64 {
    let t = delta - 4.0 * dims.d_param.sqrt() * z;
    z * (dims.alpha + t * t + 2.0 * dims.w) - dims.alpha - t * t
}

/// Monomial coefficients (a₃, a₂, a₁, a₀) of F(z, δ) in z.
pub fn cubic_coefficients(dims: &RdDimensionless) -> (f64, f64, f64, f64) {
    let s = 4.0 * dims.d_param.sqrt();
    let a3 = s * s;
    let a2 = -s * (2.0 * dims.delta + s);
    let a1 = dims.alpha + dims.delta * dims.delta + 2.0 * dims.w + 2.0 * dims.delta * s;
    let a0 = -(dims.alpha + dims.delta * dims.delta);
    (a3, a2, a1, a0)
}

/// One steady-state polarization root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyRoot {
    pub z: f64,
    pub stable: bool,
    /// Real parts of the linearized-flow eigenvalues at the fixed point.
    pub eigenvalue_res: [f64; 3],
}

/// Roots of the steady-state cubic, split into the physical polarization
/// window 0 < z ≤ 1 and out-of-range real roots.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyStates {
    /// Physical roots, ascending in z.
    pub physical: Vec<SteadyRoot>,
    /// Real roots outside (0, 1], ascending.
    pub unphysical: Vec<f64>,
}

impl SteadyStates {
    pub fn stable_z(&self) -> Vec<f64> {
        self.physical
            .iter()
            .filter(|r| r.stable)
            .map(|r| r.z)
            .collect()
    }
}

/// Steady-state polarizations from the dimensionless set alone.
///
/// Stability comes from the linearized 3D flow at a canonical completion of
/// the missing raw factors (φ_T = π/4, T1 = T2, P_z0 = 1); use
/// [`steady_state_z_for`] when the raw parameters are known.
pub fn steady_state_z(dims: &RdDimensionless) -> Result<SteadyStates> {
    let ctx = StabilityContext::canonical(dims)?;
    steady_states_with(dims, &ctx)
}

/// Steady-state polarizations with stability from the exact raw-parameter
/// Jacobian.
pub fn steady_state_z_for(raw: &RdRaw) -> Result<SteadyStates> {
    if raw.omega_f != 0.0 {
        return Err(Error::invalid(
            "steady-state algebra requires ω_f = 0 (time-independent pump frame)",
        ));
    }
    let dims = derive_dimensionless(raw)?;
    let ctx = StabilityContext::from_raw(raw);
    steady_states_with(&dims, &ctx)
}

fn steady_states_with(dims: &RdDimensionless, ctx: &StabilityContext) -> Result<SteadyStates> {
    if dims.d_param < 0.0 {
        return Err(Error::invalid("D must be nonnegative"));
    }
    if !(dims.alpha + 2.0 * dims.w > 0.0 || dims.d_param > 0.0) {
        return Err(Error::invalid(
            "degenerate cubic: require α + 2W > 0 or D > 0",
        ));
    }
    let (a3, a2, a1, a0) = cubic_coefficients(dims);
    let roots = cubic::real_roots(a3, a2, a1, a0);
    let mut physical = Vec::new();
    let mut unphysical = Vec::new();
    for z in roots {
        if z > 1e-12 && z <= 1.0 + 1e-9 {
            let z = z.min(1.0);
            let eigs = ctx.jacobian_eigenvalues(dims, z);
            let res = [eigs[0].re, eigs[1].re, eigs[2].re];
            let stable = res.iter().all(|&r| r < 0.0);
            physical.push(SteadyRoot {
                z,
                stable,
                eigenvalue_res: res,
            });
        } else {
            unphysical.push(z);
        }
    }
    physical.sort_by(|a, b| a.z.partial_cmp(&b.z).unwrap());
    Ok(SteadyStates {
        physical,
        unphysical,
    })
}

/// Raw factors needed to linearize the real 3D flow around a fixed point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StabilityContext {
    t1: f64,
    t2: f64,
    rho: f64,
    w_d: f64,
    w_k: f64,
    w_a: f64,
    w_t1: Complex64,
    p_z0: f64,
}

impl StabilityContext {
    fn from_raw(raw: &RdRaw) -> Self {
        StabilityContext {
            t1: raw.t1,
            t2: raw.t2,
            rho: raw.rho_factor(),
            w_d: raw.w_d(),
            w_k: raw.w_k(),
            w_a: raw.w_a(),
            w_t1: raw.w_t1(),
            p_z0: raw.p_z0,
        }
    }

    /// Completion consistent with the given (α, δ, D, W): T1 = T2 = 1,
    /// P_z0 = 1, φ_T = π/4.
    fn canonical(dims: &RdDimensionless) -> Result<Self> {
        if dims.alpha > 1.0 + 1e-12 {
            return Err(Error::invalid("α = 1 − W_A²T2² cannot exceed 1"));
        }
        if dims.w < 0.0 {
            return Err(Error::invalid("W must be nonnegative"));
        }
        let b = (1.0 - dims.alpha).max(0.0).sqrt();
        let rho = dims.rho_factor;
        let w_t1_mag = (2.0 * dims.w / (rho * (1.0 + b))).sqrt();
        Ok(StabilityContext {
            t1: 1.0,
            t2: 1.0,
            rho,
            w_d: dims.delta,
            w_k: 4.0 * dims.d_param.sqrt(),
            w_a: b,
            w_t1: Complex64::from_polar(w_t1_mag, std::f64::consts::FRAC_PI_4),
            p_z0: 1.0,
        })
    }

    /// Fixed-point transverse polarization (P₊) reconstructed from z via the
    /// steady state of the transverse pair.
    fn fixed_point(&self, z: f64) -> (f64, f64, f64) {
        let p_z = z * self.p_z0;
        let det_rate = self.w_d - self.w_k * p_z;
        // M_T/T2 = [[i·det−1/T2, i·w_a],[−i·w_a, −i·det−1/T2]]
        let m11 = Complex64::new(-1.0 / self.t2, det_rate);
        let m12 = Complex64::new(0.0, self.w_a);
        let m21 = Complex64::new(0.0, -self.w_a);
        let m22 = Complex64::new(-1.0 / self.t2, -det_rate);
        let det = m11 * m22 - m12 * m21;
        // solve M (P+,P−)ᵀ = −i·P_z·(−W*, W)ᵀ  ⇒  (P+,P−) = i·P_z·M⁻¹(W*, −W)ᵀ
        let rhs0 = self.w_t1.conj();
        let rhs1 = -self.w_t1;
        let p_plus = Complex64::I * p_z * (m22 * rhs0 - m12 * rhs1) / det;
        (p_plus.re, p_plus.im, p_z)
    }

    fn jacobian(&self, _dims: &RdDimensionless, z: f64) -> [[f64; 3]; 3] {
        let (px, py, pz) = self.fixed_point(z);
        let det_rate = self.w_d - self.w_k * pz;
        let (w_r, w_i) = (self.w_t1.re, self.w_t1.im);
        [
            [
                -1.0 / self.t2,
                self.w_a - det_rate,
                self.w_k * py - w_i,
            ],
            [
                det_rate + self.w_a,
                -1.0 / self.t2,
                -self.w_k * px - w_r,
            ],
            [self.rho * w_i, self.rho * w_r, -1.0 / self.t1],
        ]
    }

    fn jacobian_eigenvalues(&self, dims: &RdDimensionless, z: f64) -> Vec<Complex64> {
        cubic::eig3_real(&self.jacobian(dims, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_drive_gives_z_one() {
        let dims = RdDimensionless::new(0.8, 0.4, 0.5, 0.0);
        let ss = steady_state_z(&dims).unwrap();
        assert_eq!(ss.physical.len(), 1);
        assert!((ss.physical[0].z - 1.0).abs() < 1e-9);
        assert!(ss.physical[0].stable);
    }

    #[test]
    fn onset_repeated_root_at_half() {
        // α = D = 0.8, δ = √0.8, W = 0.8: the onset point, where the branch
        // folds at z = 1/2 (a repeated root of the cubic)
        let a = 0.8f64;
        let dims = RdDimensionless::new(a, a.sqrt(), a, a);
        let ss = steady_state_z(&dims).unwrap();
        assert!(ss.physical.len() >= 2, "repeated root at z = 1/2: {ss:?}");
        for r in &ss.physical {
            assert!((r.z - 0.5).abs() < 1e-6, "root {r:?}");
            assert!(f_polynomial(&dims, r.z, dims.delta).abs() < 1e-9);
        }
    }

    #[test]
    fn middle_root_unstable_in_three_root_window() {
        let dims = RdDimensionless::new(0.8, 0.962, 1.6, 1.5);
        let ss = steady_state_z(&dims).unwrap();
        assert_eq!(ss.physical.len(), 3, "{ss:?}");
        assert!(ss.physical[0].stable);
        assert!(!ss.physical[1].stable);
        assert!(ss.physical[2].stable);
    }

    #[test]
    fn residuals_vanish_at_roots() {
        let dims = RdDimensionless::new(0.5, 1.1, 0.9, 0.7);
        let ss = steady_state_z(&dims).unwrap();
        for r in &ss.physical {
            assert!(f_polynomial(&dims, r.z, dims.delta).abs() < 1e-9);
        }
    }
}
