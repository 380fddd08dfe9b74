use num_complex::Complex64;

use super::params::{RdDimensionless, RdRaw};
use crate::gain::PhaseGain;
use crate::{Error, Result};

/// The transverse-pair rate matrix M_T at polarization z,
/// [[i(δ−4√D z)−1, i√(1−α)], [−i√(1−α), −i(δ−4√D z)−1]].
pub fn m_t_matrix(dims: &RdDimensionless, z: f64) -> [[Complex64; 2]; 2] {
    let t = dims.detuning_at(z);
    let b = (1.0 - dims.alpha).max(0.0).sqrt();
    [
        [Complex64::new(-1.0, t), Complex64::new(0.0, b)],
        [Complex64::new(0.0, -b), Complex64::new(-1.0, -t)],
    ]
}

/// Closed-form eigenvalues of M_T: −1 ± √(1 − α − (δ−4√D z)²).
pub fn m_t_eigenvalues(dims: &RdDimensionless, z: f64) -> (Complex64, Complex64) {
    let t = dims.detuning_at(z);
    let root = Complex64::new(1.0 - dims.alpha - t * t, 0.0).sqrt();
    (-Complex64::ONE + root, -Complex64::ONE - root)
}

/// The damping decomposition matrix M_d of the real 3D flow,
/// eigenvalues {−(1±W_A T2)/T2, −1/T1}.
pub fn m_d_matrix(raw: &RdRaw) -> [[f64; 3]; 3] {
    let w_a = raw.w_a();
    let rho = raw.rho_factor();
    let w_t1 = raw.w_t1();
    [
        [-1.0 / raw.t2, w_a, 0.0],
        [w_a, -1.0 / raw.t2, 0.0],
        [(rho - 1.0) * w_t1.im, (rho - 1.0) * w_t1.re, -1.0 / raw.t1],
    ]
}

/// Effective spin damping rates: eigenvalues of M_d.
pub fn effective_damping_eigenvalues(raw: &RdRaw) -> [f64; 3] {
    let w_a = raw.w_a();
    [
        -(1.0 + w_a * raw.t2) / raw.t2,
        -(1.0 - w_a * raw.t2) / raw.t2,
        -1.0 / raw.t1,
    ]
}

/// Phase-dependent gain curve from the μ₁/μ₂ decomposition of M_T.
///
/// Errors above pump threshold (|μ₁| ≤ |μ₂|), where the transverse pair has
/// no decaying steady state.
pub fn phase_gain(dims: &RdDimensionless, z: f64) -> Result<PhaseGain> {
    let t = dims.detuning_at(z);
    let mu1 = Complex64::new(-1.0, t);
    let mu2 = Complex64::new(0.0, (1.0 - dims.alpha).max(0.0).sqrt());
    if mu1.norm() <= mu2.norm() {
        return Err(Error::AboveThreshold(format!(
            "|μ₁| = {:.6} ≤ |μ₂| = {:.6}: operating point is above the pump \
             threshold",
            mu1.norm(),
            mu2.norm()
        )));
    }
    Ok(PhaseGain {
        eta: mu2.norm() / mu1.norm(),
        phase: mu1.arg() + mu2.arg(),
    })
}

/// g_P(φ_T) = 1 + 2(|μ₂|/|μ₁|)cos(2φ_T + φ₁ + φ₂) + (|μ₂|/|μ₁|)².
pub fn gain_phase(dims: &RdDimensionless, z: f64, phi_t: f64) -> Result<f64> {
    Ok(phase_gain(dims, z)?.evaluate(phi_t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::eig3_real;

    fn dims(alpha: f64, delta: f64, d: f64, w: f64) -> RdDimensionless {
        RdDimensionless::new(alpha, delta, d, w)
    }

    #[test]
    fn gain_is_unity_without_pump() {
        let d = dims(1.0, 0.7, 0.4, 0.3);
        for k in 0..10 {
            let phi = k as f64 * 0.6;
            assert!((gain_phase(&d, 0.8, phi).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn gain_extrema_formula() {
        let d = dims(0.7, 1.4, 0.9, 0.5);
        let g = phase_gain(&d, 0.6).unwrap();
        let mut max_seen = f64::MIN;
        let mut min_seen = f64::MAX;
        for k in 0..100000 {
            let v = g.evaluate(k as f64 * 1e-4);
            max_seen = max_seen.max(v);
            min_seen = min_seen.min(v);
        }
        assert!((max_seen - g.max()).abs() < 1e-7);
        assert!((min_seen - g.min()).abs() < 1e-7);
    }

    #[test]
    fn above_threshold_is_an_error() {
        // α < −(δ−4√D z)² makes |μ₂| exceed |μ₁|
        let d = dims(-1.5, 0.0, 0.0, 0.1);
        assert!(matches!(
            gain_phase(&d, 0.5, 0.0),
            Err(Error::AboveThreshold(_))
        ));
    }

    #[test]
    fn m_t_eigenvalues_special_cases() {
        // α = 1, δ = 4√D z: both −1
        let d = dims(1.0, 4.0 * 0.25f64.sqrt() * 0.5, 0.25, 0.2);
        let (e1, e2) = m_t_eigenvalues(&d, 0.5);
        assert!((e1 + Complex64::ONE).norm() < 1e-12);
        assert!((e2 + Complex64::ONE).norm() < 1e-12);
        // α = 0, δ = 4√D z: {0, −2}
        let d = dims(0.0, 4.0 * 0.25f64.sqrt() * 0.5, 0.25, 0.2);
        let (e1, e2) = m_t_eigenvalues(&d, 0.5);
        assert!(e1.norm() < 1e-12);
        assert!((e2 + 2.0 * Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn m_t_closed_form_matches_2x2_eigen_oracle() {
        let d = dims(0.65, 1.2, 0.8, 0.4);
        let z = 0.7;
        let m = m_t_matrix(&d, z);
        // eigenvalues of a 2x2 from trace/determinant
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let disc = (tr * tr - 4.0 * det).sqrt();
        let lam1 = 0.5 * (tr + disc);
        let lam2 = 0.5 * (tr - disc);
        let (e1, e2) = m_t_eigenvalues(&d, z);
        let direct = [lam1, lam2];
        for e in [e1, e2] {
            assert!(direct.iter().any(|l| (l - e).norm() < 1e-10));
        }
    }

    #[test]
    fn m_d_eigenvalues_match_matrix() {
        let raw = RdRaw {
            omega0: 50.0,
            omega_k: 2.0,
            omega_a: 0.9,
            omega_d: 0.2,
            omega_f: 0.0,
            pump_l1: 1.1,
            w_t1_mag: 0.6,
            phi_t: 0.9,
            t1: 2.0,
            t2: 0.8,
            p_z0: -1.0,
        };
        let closed = effective_damping_eigenvalues(&raw);
        let numeric = eig3_real(&m_d_matrix(&raw));
        for c in closed {
            assert!(
                numeric.iter().any(|n| (n.re - c).abs() < 1e-10 && n.im.abs() < 1e-10),
                "missing eigenvalue {c}"
            );
        }
    }

    #[test]
    fn damping_sign_change_at_parametric_threshold() {
        let mut raw = RdRaw {
            omega0: 50.0,
            omega_k: 2.0,
            omega_a: 1.0,
            omega_d: 0.0,
            omega_f: 0.0,
            pump_l1: 0.0,
            w_t1_mag: 0.0,
            phi_t: 0.0,
            t1: 1.0,
            t2: 1.0,
            p_z0: -1.0,
        };
        // W_A = (ϱ/2)(ω_A/ω_K)Ω_L1; scan the pump through W_A·T2 = 1
        let threshold = 2.0 / (raw.rho_factor() * raw.ratio() * raw.t2);
        raw.pump_l1 = 0.9 * threshold;
        assert!(effective_damping_eigenvalues(&raw)[1] < 0.0);
        raw.pump_l1 = 1.1 * threshold;
        assert!(effective_damping_eigenvalues(&raw)[1] > 0.0);
    }
}
