use num_complex::Complex64;

use crate::{Error, Result};

/// Bistability onset point in the dimensionless (z, δ, W) space: a double
/// root of the steady-state cubic where the branch folds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnsetPoint {
    pub z: f64,
    pub delta: f64,
    pub w: f64,
}

/// Peak (extremum-response) point of the steady-state branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakPoint {
    pub z: f64,
    pub delta: f64,
}

/// Peak point z = 1/(1 + 2W/α), δ = 4√D/(1 + 2W/α); `None` when α ≤ 0 (no
/// peak below the parametric instability).
pub fn peak_point(alpha: f64, d_param: f64, w: f64) -> Option<PeakPoint> {
    if alpha <= 0.0 {
        return None;
    }
    let denom = 1.0 + 2.0 * w / alpha;
    Some(PeakPoint {
        z: 1.0 / denom,
        delta: 4.0 * d_param.sqrt() / denom,
    })
}

fn z_of(x: Complex64) -> Complex64 {
    (x + 1.0 / x + 3.0) / 4.0
}

/// Bistability onset points for given (α, D), ascending in W.
///
/// Candidates come from z_± = Z(q·e^{±2πi/3}) with Z(x) = (x + 1/x + 3)/4
/// and q = exp(i(2/3)·cos⁻¹√(α/D)), filtered to real z in (0, 1]. This
/// yields two points for 0 < α < D, the single degenerate point at α = D,
/// none for α > D, and exactly one point for α < 0 (where bistability holds
/// only below that W).
pub fn bistability_onset(alpha: f64, d_param: f64) -> Result<Vec<OnsetPoint>> {
    if d_param <= 0.0 {
        return Err(Error::invalid("bistability_onset requires D > 0"));
    }
    let ratio = Complex64::new(alpha / d_param, 0.0);
    let q = (Complex64::I * (2.0 / 3.0) * ratio.sqrt().acos()).exp();
    let rot = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);

    let mut points: Vec<OnsetPoint> = Vec::new();
    for x in [q * rot, q / rot] {
        let z = z_of(x);
        if z.im.abs() > 1e-10 {
            continue;
        }
        let z = z.re;
        if !(z > 0.0 && z <= 1.0 + 1e-12) {
            continue;
        }
        let z = z.min(1.0);
        let delta = 2.0 * d_param.sqrt() * (3.0 * z - 1.0);
        let w = 6.0 * d_param * (1.0 - z) * (1.0 - z) - alpha / 2.0;
        if points.iter().any(|p| (p.z - z).abs() < 1e-12) {
            continue;
        }
        points.push(OnsetPoint { z, delta, w });
    }
    points.sort_by(|a, b| a.w.partial_cmp(&b.w).unwrap());
    Ok(points)
}

/// Invert the lower bistability onset: find D such that the onset point with
/// the smaller W maps to the measured (δ_c, W_c) at the given α.
///
/// Searches D ∈ [α, 10⁶·α] (parametrized by u = √(D−α), which keeps the
/// degenerate D = α endpoint well-conditioned) by bisection on the monotone
/// W₋(D), then validates the full round trip to 1e-8.
pub fn infer_d_from_onset(delta_c: f64, w_c: f64, alpha: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::invalid(
            "onset inversion is defined for 0 < α (below parametric threshold)",
        ));
    }
    if !(w_c > 0.0 && w_c <= alpha * (1.0 + 1e-9)) {
        return Err(Error::Fit(format!(
            "no onset with W = {w_c:.6e} exists for α = {alpha:.6e}: the lower \
             onset W lies in (0, α]"
        )));
    }
    let lower_w = |u: f64| -> Result<f64> {
        let d = alpha + u * u;
        let pts = bistability_onset(alpha, d)?;
        pts.first()
            .map(|p| p.w)
            .ok_or_else(|| Error::Fit("no onset point in search range".into()))
    };

    let u_max = (alpha * (1e6 - 1.0)).sqrt();
    let mut lo = 0.0_f64;
    let mut hi = u_max;
    if lower_w(hi)? > w_c {
        return Err(Error::Fit(format!(
            "no consistent D in (α, 1e6·α]: W₋ at the upper bound still \
             exceeds {w_c:.6e}"
        )));
    }
    // W₋ decreases with u; bisect for the crossing
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lower_w(mid)? >= w_c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = 0.5 * (lo + hi);
    let d = alpha + u * u;
    let pts = bistability_onset(alpha, d)?;
    let p = pts
        .first()
        .ok_or_else(|| Error::Fit("onset disappeared at fitted D".into()))?;
    let w_res = (p.w - w_c).abs() / w_c.abs().max(1.0);
    let d_res = (p.delta - delta_c).abs() / delta_c.abs().max(1.0);
    if w_res > 1e-8 || d_res > 1e-8 {
        return Err(Error::Fit(format!(
            "(δ_c, W_c) = ({delta_c:.6e}, {w_c:.6e}) is inconsistent with any \
             onset at α = {alpha:.6e}: best D = {d:.6e} leaves residuals \
             (δ: {d_res:.3e}, W: {w_res:.3e})"
        )));
    }
    Ok(d)
}
