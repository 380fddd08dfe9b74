//! Hysteresis mapping: follow the occupied stable branch while sweeping the
//! detuning up and down at each power, record the jump frequencies where the
//! branch vanishes, and locate the onset power where the two jump curves
//! first separate.

use rayon::prelude::*;

use spinres::boson::{bistability_threshold, steady_state_e, BosonParams};
use spinres::rapid::{peak_point, steady_state_z, RdDimensionless};

use crate::calibrate::CalibrationMap;
use crate::emit::{Table, Value};
use crate::CliError;

/// All steady-state roots at one grid point, ascending in the response
/// variable, with stability flags.
#[derive(Debug, Clone, Default)]
pub struct RootSet {
    pub roots: Vec<(f64, bool)>,
}

impl RootSet {
    fn stable(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots.iter().filter(|(_, s)| *s).map(|(r, _)| *r)
    }

    fn middle_unstable(&self) -> Option<f64> {
        if self.roots.len() == 3 && !self.roots[1].1 {
            Some(self.roots[1].0)
        } else {
            self.roots.iter().find(|(_, s)| !*s).map(|(r, _)| *r)
        }
    }
}

/// A steady-state model exposing its stable branches over a
/// (power, detuning-frequency) plane.
pub trait SteadyBranchModel: Sync {
    fn name(&self) -> &'static str;
    fn roots(&self, power_mw: f64, detuning_hz: f64) -> Result<RootSet, CliError>;
    /// The branch the experiment occupies when entering from far detuning.
    fn entry_branch(&self, roots: &RootSet) -> Option<f64>;
    /// Peak-point detuning at this power, when one exists.
    fn peak_hz(&self, power_mw: f64) -> Option<f64>;
}

/// Rapid-disentanglement model: W = P_T·w_per_mw, δ = 2πf·T2, fixed (α, D).
pub struct RapidDisentModel {
    pub cal: CalibrationMap,
    pub alpha: f64,
    pub d_param: f64,
}

impl SteadyBranchModel for RapidDisentModel {
    fn name(&self) -> &'static str {
        "rapid-disent"
    }

    fn roots(&self, power_mw: f64, detuning_hz: f64) -> Result<RootSet, CliError> {
        let w = power_mw * self.cal.w_per_mw;
        let delta = self.cal.delta_of_hz(detuning_hz);
        let dims = RdDimensionless::new(self.alpha, delta, self.d_param, w);
        let ss = steady_state_z(&dims).map_err(CliError::from)?;
        Ok(RootSet {
            roots: ss.physical.iter().map(|r| (r.z, r.stable)).collect(),
        })
    }

    fn entry_branch(&self, roots: &RootSet) -> Option<f64> {
        // weak response = polarization closest to the undriven z = 1
        roots.stable().fold(None, |best, r| match best {
            None => Some(r),
            Some(b) => Some(if r > b { r } else { b }),
        })
    }

    fn peak_hz(&self, power_mw: f64) -> Option<f64> {
        let w = power_mw * self.cal.w_per_mw;
        peak_point(self.alpha, self.d_param, w).map(|p| self.cal.hz_of_delta(p.delta))
    }
}

/// Bosonization model: Ω₁ = Ω_1c·(P_T/P_c), Ω_d = 2πf.
pub struct BosonizationModel {
    pub base: BosonParams,
    pub omega_1c: f64,
    pub p_c_mw: f64,
}

impl BosonizationModel {
    pub fn new(base: BosonParams, p_c_mw: f64) -> Result<Self, CliError> {
        let th = bistability_threshold(&base).ok_or_else(|| {
            CliError::Model(
                "bosonization model has no bistability threshold (|ω_K| < √3γ₃)".into(),
            )
        })?;
        if p_c_mw <= 0.0 {
            return Err(CliError::Model("onset power must be positive".into()));
        }
        Ok(BosonizationModel {
            base,
            omega_1c: th.omega_1c,
            p_c_mw,
        })
    }

    fn at(&self, power_mw: f64, detuning_hz: f64) -> BosonParams {
        let omega_d = 2.0 * std::f64::consts::PI * detuning_hz;
        BosonParams {
            omega_t1: self.omega_1c * power_mw / self.p_c_mw,
            // place Ω_d = ω_T − ω₀ + Lω_K at the requested value
            omega0: self.base.omega_t + self.base.spins as f64 * self.base.omega_k - omega_d,
            ..self.base
        }
    }
}

impl SteadyBranchModel for BosonizationModel {
    fn name(&self) -> &'static str {
        "bosonization"
    }

    fn roots(&self, power_mw: f64, detuning_hz: f64) -> Result<RootSet, CliError> {
        let p = self.at(power_mw, detuning_hz);
        let roots = steady_state_e(&p).map_err(CliError::from)?;
        Ok(RootSet {
            roots: roots.iter().map(|r| (r.e, r.stable)).collect(),
        })
    }

    fn entry_branch(&self, roots: &RootSet) -> Option<f64> {
        // weak response = smallest magnon number
        roots.stable().fold(None, |best, r| match best {
            None => Some(r),
            Some(b) => Some(if r < b { r } else { b }),
        })
    }

    fn peak_hz(&self, power_mw: f64) -> Option<f64> {
        // the response peaks where the Kerr-shifted detuning vanishes:
        // Ω_d = ω_K·E_pk with E_pk[(γ+γ₃E_pk)²] = 2γ₁Ω₁
        let p = self.at(power_mw, 0.0);
        let omega_1 = p.omega_t1;
        let g = p.gamma();
        let roots = spinres::cubic::real_roots(
            p.gamma3 * p.gamma3,
            2.0 * g * p.gamma3,
            g * g,
            -2.0 * p.gamma1 * omega_1,
        );
        roots
            .into_iter()
            .find(|&e| e >= 0.0)
            .map(|e| p.omega_k * e / (2.0 * std::f64::consts::PI))
    }
}

/// Jump and peak curves over a power grid, plus the extracted onset point.
#[derive(Debug, Clone)]
pub struct BistabilityMap {
    pub model: String,
    pub powers_mw: Vec<f64>,
    pub up_jump_hz: Vec<Option<f64>>,
    pub down_jump_hz: Vec<Option<f64>>,
    pub peak_hz: Vec<Option<f64>>,
    /// (P_c in mW, f_dc in Hz) where the jump curves first separate.
    pub onset: Option<(f64, f64)>,
}

impl BistabilityMap {
    pub fn hysteresis_width_hz(&self, idx: usize) -> Option<f64> {
        match (self.up_jump_hz[idx], self.down_jump_hz[idx]) {
            (Some(u), Some(d)) => Some(u - d),
            _ => None,
        }
    }

    /// Power rows where the jump curves are separated by more than one cell.
    pub fn separated_rows(&self, cell_hz: f64) -> Vec<usize> {
        (0..self.powers_mw.len())
            .filter(|&k| self.hysteresis_width_hz(k).unwrap_or(0.0) > cell_hz)
            .collect()
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            "power_mw",
            "up_jump_hz",
            "down_jump_hz",
            "hysteresis_hz",
            "peak_hz",
        ]);
        t.meta("model", &self.model);
        if let Some((p_c, f_dc)) = self.onset {
            t.meta("onset_power_mw", p_c);
            t.meta("onset_detuning_hz", f_dc);
        }
        for k in 0..self.powers_mw.len() {
            t.push(vec![
                Value::F(self.powers_mw[k]),
                Value::opt_f(self.up_jump_hz[k]),
                Value::opt_f(self.down_jump_hz[k]),
                Value::opt_f(self.hysteresis_width_hz(k)),
                Value::opt_f(self.peak_hz[k]),
            ]);
        }
        t
    }
}

/// Result of one directional detuning sweep.
struct SweepRow {
    jump_hz: Option<f64>,
}

fn follow_branch(
    model: &dyn SteadyBranchModel,
    power_mw: f64,
    detunings_hz: &[f64],
) -> Result<SweepRow, CliError> {
    let mut current: Option<f64> = None;
    let mut prev: Option<RootSet> = None;
    let mut jump_hz = None;
    for &f_d in detunings_hz {
        let roots = model.roots(power_mw, f_d)?;
        if roots.roots.is_empty() {
            current = None;
            prev = Some(roots);
            continue;
        }
        match current {
            None => current = model.entry_branch(&roots),
            Some(v) => {
                let nearest = roots
                    .roots
                    .iter()
                    .filter(|(_, s)| *s)
                    .map(|(r, _)| *r)
                    .min_by(|a, b| (a - v).abs().partial_cmp(&(b - v).abs()).unwrap());
                let nearest = match nearest {
                    Some(n) => n,
                    None => {
                        current = None;
                        prev = Some(roots);
                        continue;
                    }
                };
                let was_window = prev.as_ref().map(|p| p.roots.len() >= 2).unwrap_or(false);
                let is_single = roots.roots.len() == 1;
                if was_window && is_single {
                    // the followed branch vanished if the survivor lies on
                    // the far side of the old separatrix
                    let sep = prev.as_ref().and_then(|p| p.middle_unstable());
                    let jumped = match sep {
                        Some(mid) => (nearest - v).abs() > (mid - v).abs(),
                        None => false,
                    };
                    if jumped && jump_hz.is_none() {
                        jump_hz = Some(f_d);
                    }
                }
                current = Some(nearest);
            }
        }
        prev = Some(roots);
    }
    Ok(SweepRow { jump_hz })
}

/// Map the bistable region: hysteresis sweeps are sequential along the
/// detuning axis; power rows run concurrently; the onset gets one bisection
/// refinement pass in power.
pub fn map_bistability(
    model: &dyn SteadyBranchModel,
    powers_mw: &[f64],
    detunings_hz: &[f64],
) -> Result<BistabilityMap, CliError> {
    if powers_mw.is_empty() || detunings_hz.is_empty() {
        return Err(CliError::Model("bistability map needs nonempty grids".into()));
    }
    if powers_mw.windows(2).any(|w| w[0] > w[1])
        || detunings_hz.windows(2).any(|w| w[0] > w[1])
    {
        return Err(CliError::Model("grids must be monotone ascending".into()));
    }
    let mut down = detunings_hz.to_vec();
    down.reverse();

    let rows: Vec<Result<(Option<f64>, Option<f64>), CliError>> = powers_mw
        .par_iter()
        .map(|&p| {
            let up = follow_branch(model, p, detunings_hz)?;
            let dn = follow_branch(model, p, &down)?;
            Ok((up.jump_hz, dn.jump_hz))
        })
        .collect();

    let mut up_jump_hz = Vec::with_capacity(rows.len());
    let mut down_jump_hz = Vec::with_capacity(rows.len());
    for r in rows {
        let (u, d) = r?;
        up_jump_hz.push(u);
        down_jump_hz.push(d);
    }
    let peak_hz: Vec<Option<f64>> = powers_mw.iter().map(|&p| model.peak_hz(p)).collect();

    let cell = if detunings_hz.len() > 1 {
        (detunings_hz[detunings_hz.len() - 1] - detunings_hz[0]) / (detunings_hz.len() - 1) as f64
    } else {
        0.0
    };
    let mut map = BistabilityMap {
        model: model.name().to_string(),
        powers_mw: powers_mw.to_vec(),
        up_jump_hz,
        down_jump_hz,
        peak_hz,
        onset: None,
    };
    map.onset = locate_onset(model, &map, detunings_hz, cell)?;
    Ok(map)
}

fn locate_onset(
    model: &dyn SteadyBranchModel,
    map: &BistabilityMap,
    detunings_hz: &[f64],
    cell_hz: f64,
) -> Result<Option<(f64, f64)>, CliError> {
    let separated = map.separated_rows(cell_hz);
    let first = match separated.first() {
        Some(&k) => k,
        None => return Ok(None),
    };
    let f_dc = match (map.up_jump_hz[first], map.down_jump_hz[first]) {
        (Some(u), Some(d)) => 0.5 * (u + d),
        _ => return Ok(None),
    };
    if first == 0 {
        return Ok(Some((map.powers_mw[0], f_dc)));
    }
    // one bisection refinement between the last merged and first separated
    // powers
    let (lo, hi) = (map.powers_mw[first - 1], map.powers_mw[first]);
    let mid = 0.5 * (lo + hi);
    let up = follow_branch(model, mid, detunings_hz)?;
    let mut down_axis = detunings_hz.to_vec();
    down_axis.reverse();
    let dn = follow_branch(model, mid, &down_axis)?;
    let sep_mid = match (up.jump_hz, dn.jump_hz) {
        (Some(u), Some(d)) => u - d > cell_hz,
        _ => false,
    };
    let p_c = if sep_mid {
        0.5 * (lo + mid)
    } else {
        0.5 * (mid + hi)
    };
    Ok(Some((p_c, f_dc)))
}

/// Side-by-side comparison of the two models on a shared grid.
#[derive(Debug, Clone)]
pub struct ModelComparison {
    pub rd: BistabilityMap,
    pub boson: BistabilityMap,
    /// Closed region: hysteresis opens and then closes again within the
    /// power range.
    pub rd_region_closed: bool,
    /// Open region: hysteresis still widening at the top of the power range.
    pub boson_region_open: bool,
}

pub fn compare_models(
    rd: &RapidDisentModel,
    boson: &BosonizationModel,
    powers_mw: &[f64],
    detunings_hz: &[f64],
) -> Result<ModelComparison, CliError> {
    let rd_map = map_bistability(rd, powers_mw, detunings_hz)?;
    let boson_map = map_bistability(boson, powers_mw, detunings_hz)?;
    let cell = if detunings_hz.len() > 1 {
        (detunings_hz[detunings_hz.len() - 1] - detunings_hz[0]) / (detunings_hz.len() - 1) as f64
    } else {
        0.0
    };
    let rd_rows = rd_map.separated_rows(cell);
    let n = powers_mw.len();
    let rd_region_closed =
        !rd_rows.is_empty() && rd_rows.last() != Some(&(n - 1));
    let boson_rows = boson_map.separated_rows(cell);
    let boson_region_open = boson_rows.last() == Some(&(n - 1)) && {
        let widths: Vec<f64> = boson_rows
            .iter()
            .map(|&k| boson_map.hysteresis_width_hz(k).unwrap_or(0.0))
            .collect();
        widths.len() < 2 || widths.last() >= widths.first()
    };
    Ok(ModelComparison {
        rd: rd_map,
        boson: boson_map,
        rd_region_closed,
        boson_region_open,
    })
}

impl ModelComparison {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            "power_mw",
            "rd_up_hz",
            "rd_down_hz",
            "boson_up_hz",
            "boson_down_hz",
            "up_diff_hz",
            "down_diff_hz",
        ]);
        t.meta("rd_region_closed", self.rd_region_closed);
        t.meta("boson_region_open", self.boson_region_open);
        if let Some((p, f)) = self.rd.onset {
            t.meta("rd_onset_power_mw", p);
            t.meta("rd_onset_detuning_hz", f);
        }
        if let Some((p, f)) = self.boson.onset {
            t.meta("boson_onset_power_mw", p);
            t.meta("boson_onset_detuning_hz", f);
        }
        for k in 0..self.rd.powers_mw.len() {
            let diff = |a: Option<f64>, b: Option<f64>| match (a, b) {
                (Some(x), Some(y)) => Some(x - y),
                _ => None,
            };
            t.push(vec![
                Value::F(self.rd.powers_mw[k]),
                Value::opt_f(self.rd.up_jump_hz[k]),
                Value::opt_f(self.rd.down_jump_hz[k]),
                Value::opt_f(self.boson.up_jump_hz[k]),
                Value::opt_f(self.boson.down_jump_hz[k]),
                Value::opt_f(diff(self.rd.up_jump_hz[k], self.boson.up_jump_hz[k])),
                Value::opt_f(diff(self.rd.down_jump_hz[k], self.boson.down_jump_hz[k])),
            ]);
        }
        t
    }
}
