use super::gain::boson_gain;
use super::params::BosonParams;
use crate::cubic;
use crate::{Error, Result};

/// One steady-state magnon number root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ERoot {
    pub e: f64,
    pub stable: bool,
}

/// Coefficients (a₃, a₂, a₁, a₀) of the magnon-number cubic
/// E[(Ω_d − ω_K E)² + (γ + γ₃E)²] − 2γ₁Ω₁ = 0.
pub fn magnon_cubic_coefficients(p: &BosonParams, omega_1: f64) -> (f64, f64, f64, f64) {
    let od = p.omega_d_detuning();
    let g = p.gamma();
    (
        p.omega_k * p.omega_k + p.gamma3 * p.gamma3,
        2.0 * (g * p.gamma3 - od * p.omega_k),
        od * od + g * g,
        -2.0 * p.gamma1 * omega_1,
    )
}

/// Non-negative steady-state magnon numbers with Ω₁ = ω_T1·g_M(φ_T), the
/// gain evaluated in the small-amplitude limit (E → 0) so the steady state
/// is a true cubic.
///
/// Requires ω_f = 0. The middle of three roots is flagged unstable.
pub fn steady_state_e(p: &BosonParams) -> Result<Vec<ERoot>> {
    p.validate()?;
    if p.omega_f != 0.0 {
        return Err(Error::invalid(
            "steady-state algebra requires ω_f = 0 (time-independent pump frame)",
        ));
    }
    let omega_1 = p.omega_t1 * boson_gain(p, 0.0)?.evaluate(p.phi_t);
    Ok(classify(cubic_roots_nonneg(p, omega_1)))
}

/// Self-consistent variant: iterate Ω₁ = ω_T1·g_M evaluated at each root's
/// own magnon number until the root set converges.
pub fn steady_state_e_self_consistent(p: &BosonParams, max_iter: usize) -> Result<Vec<ERoot>> {
    p.validate()?;
    if p.omega_f != 0.0 {
        return Err(Error::invalid(
            "steady-state algebra requires ω_f = 0 (time-independent pump frame)",
        ));
    }
    let mut roots = steady_state_e(p)?;
    for _ in 0..max_iter {
        let mut updated: Vec<f64> = Vec::new();
        for r in &roots {
            let omega_1 = p.omega_t1 * boson_gain(p, r.e)?.evaluate(p.phi_t);
            // nearest root of the re-evaluated cubic continues this branch
            let cands = cubic_roots_nonneg(p, omega_1);
            if let Some(&next) = cands
                .iter()
                .min_by(|a, b| (*a - r.e).abs().partial_cmp(&(*b - r.e).abs()).unwrap())
            {
                updated.push(next);
            }
        }
        updated.sort_by(|a, b| a.partial_cmp(b).unwrap());
        updated.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * (1.0 + b.abs()));
        let done = updated.len() == roots.len()
            && updated
                .iter()
                .zip(&roots)
                .all(|(u, r)| (u - r.e).abs() < 1e-10 * (1.0 + r.e));
        roots = classify(updated);
        if done {
            break;
        }
    }
    Ok(roots)
}

fn cubic_roots_nonneg(p: &BosonParams, omega_1: f64) -> Vec<f64> {
    let (a3, a2, a1, a0) = magnon_cubic_coefficients(p, omega_1);
    cubic::real_roots(a3, a2, a1, a0)
        .into_iter()
        .filter(|&e| e >= -1e-12)
        .map(|e| e.max(0.0))
        .collect()
}

fn classify(mut es: Vec<f64>) -> Vec<ERoot> {
    es.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = es.len();
    es.into_iter()
        .enumerate()
        .map(|(k, e)| ERoot {
            e,
            stable: !(n == 3 && k == 1),
        })
        .collect()
}

/// Critical drive and magnon number at the bistability onset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BistabilityThreshold {
    /// Ω_1c = E_c³(ω_K² + γ₃²)/(2γ₁).
    pub omega_1c: f64,
    /// E_c = (2γ/√3)/(|ω_K| − √3·γ₃).
    pub e_c: f64,
}

/// Closed-form bistability threshold; `None` when |ω_K| < √3·γ₃ (nonlinear
/// damping wins and the response never folds).
pub fn bistability_threshold(p: &BosonParams) -> Option<BistabilityThreshold> {
    let denom = p.omega_k.abs() - 3f64.sqrt() * p.gamma3;
    if denom <= 0.0 || p.gamma1 <= 0.0 {
        return None;
    }
    let e_c = (2.0 * p.gamma() / 3f64.sqrt()) / denom;
    let omega_1c = e_c.powi(3) * (p.omega_k * p.omega_k + p.gamma3 * p.gamma3) / (2.0 * p.gamma1);
    Some(BistabilityThreshold { omega_1c, e_c })
}
