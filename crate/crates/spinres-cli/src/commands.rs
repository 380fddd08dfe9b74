//! Implementations behind the CLI subcommands. Each takes the merged
//! configuration and produces one output table plus the axis hint used for
//! SVG rendering.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinres::boson::{
    bistability_threshold, boson_gain, eta_a_small_anisotropy, steady_state_e, BosonParams,
};
use spinres::dynamics::{
    evolve, find_attractors, BlochDirection, DisentanglementConfig, DissipationParams,
    DrivenSpinParams, Frame,
};
use spinres::rapid::{
    bistability_onset, gain_phase, infer_d_from_onset, steady_state_z, RdDimensionless,
};

use crate::bistability::{compare_models, map_bistability, BosonizationModel, RapidDisentModel};
use crate::calibrate::CalibrationMap;
use crate::config::Config;
use crate::emit::{Table, Value};
use crate::peaks::peak_curves;
use crate::sweep::Axis;
use crate::CliError;

/// SVG axis hint: (x column, y columns).
pub type SvgSpec = (String, Vec<String>);

/// Optional grid jitter (off unless `--jitter` is given; seeded for
/// reproducibility).
#[derive(Debug, Clone, Copy)]
pub struct Jitter {
    pub frac: f64,
    pub seed: u64,
}

impl Jitter {
    pub fn apply(&self, axis: &Axis) -> Vec<f64> {
        if self.frac == 0.0 {
            return axis.values();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        axis.values_jittered(self.frac, &mut rng)
    }
}

pub fn run(
    name: &str,
    cfg: &Config,
    jitter: Jitter,
) -> Result<(Table, SvgSpec), CliError> {
    match name {
        "two-spin-evolve" => two_spin_evolve(cfg),
        "two-spin-basins" => two_spin_basins(cfg),
        "rd-steady" => rd_steady(cfg, jitter),
        "rd-onset" => rd_onset(cfg),
        "rd-gain" => rd_gain(cfg),
        "boson-steady" => boson_steady(cfg, jitter),
        "boson-onset" => boson_onset(cfg),
        "boson-gain" => boson_gain_cmd(cfg),
        "map-bistability" => map_bistability_cmd(cfg, jitter),
        "peak-curves" => peak_curves_cmd(cfg, jitter),
        "compare-models" => compare_models_cmd(cfg, jitter),
        other => Err(CliError::Model(format!("unknown command {other}"))),
    }
}

// ---------- shared parameter readers ----------

fn driven_params(cfg: &Config) -> Result<DrivenSpinParams, CliError> {
    let p = DrivenSpinParams {
        omega0: cfg.f64("omega0", 0.1)?,
        omega_k: cfg.f64("omega_k", 0.0)?,
        omega_a: cfg.f64("omega_a", 1.0)?,
        omega_d: cfg.f64("omega_d", 0.0)?,
        omega_f: cfg.f64("omega_f", 0.0)?,
        pump_l1: cfg.f64("pump_l1", 1.5)?,
        drive_t1_mag: cfg.f64("drive_t1_mag", 0.0)?,
        phi_t: cfg.f64("phi_t", 0.0)?,
        spins: cfg.usize("spins", 2)?,
    };
    p.validate()?;
    Ok(p)
}

fn dissipation(cfg: &Config) -> Result<DissipationParams, CliError> {
    if cfg.raw("gamma1").is_some() || cfg.raw("gamma_phi").is_some() {
        Ok(DissipationParams::from_rates(
            cfg.f64("gamma1", 0.0)?,
            cfg.f64("gamma_phi", 0.0)?,
            cfg.f64("n0", 0.0)?,
        )?)
    } else {
        Ok(DissipationParams::from_times(
            cfg.f64("t1", 0.2)?,
            cfg.f64("t2", 0.2)?,
            cfg.f64("n0", 0.0)?,
        )?)
    }
}

fn disentanglement(cfg: &Config, spins: usize) -> Result<DisentanglementConfig, CliError> {
    let mut c = DisentanglementConfig::per_spin(cfg.f64("gamma_d", 100.0)?, spins)?;
    c.eps = cfg.f64("eps", 1e-12)?;
    c.validate()?;
    Ok(c)
}

fn frame(cfg: &Config) -> Result<Frame, CliError> {
    match cfg.string("frame", "rwa").as_str() {
        "rwa" => Ok(Frame::Rwa),
        "full" => Ok(Frame::Full),
        other => Err(CliError::Model(format!("frame must be rwa|full, got {other}"))),
    }
}

fn boson_params(cfg: &Config) -> Result<BosonParams, CliError> {
    let p = BosonParams {
        gamma1: cfg.f64("gamma1", 0.5)?,
        gamma2: cfg.f64("gamma2", 0.5)?,
        gamma3: cfg.f64("gamma3", 0.1)?,
        omega_k: cfg.f64("omega_k", 1.0)?,
        omega_a: cfg.f64("omega_a", 1e-6)?,
        pump_l1: cfg.f64("pump_l1", 0.0)?,
        omega_t: cfg.f64("omega_t", 0.0)?,
        omega0: cfg.f64("omega0", 0.0)?,
        omega_f: cfg.f64("omega_f", 0.0)?,
        spins: cfg.usize("spins", 1)?,
        omega_t1: cfg.f64("omega_t1", 1.0)?,
        phi_t: cfg.f64("phi_t", 0.0)?,
    };
    p.validate()?;
    Ok(p)
}

fn calibration(cfg: &Config) -> Result<CalibrationMap, CliError> {
    let cal = CalibrationMap {
        w_per_mw: 1.0 / cfg.f64("cal_w_mw", 37.0)?,
        wa2t22_per_mw: 1.0 / cfg.f64("cal_wa_mw", 980.0)?,
        t2: cfg.f64("cal_t2", 1.0)?,
    };
    cal.validate()?;
    Ok(cal)
}

fn f64_list(cfg: &Config, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
    match cfg.raw(key) {
        None => Ok(default.to_vec()),
        Some(text) => text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| CliError::Model(format!("key {key}: bad number {s:?}")))
            })
            .collect(),
    }
}

fn push_meta_params(t: &mut Table, pairs: &[(&str, f64)]) {
    for (k, v) in pairs {
        t.meta(k, v);
    }
}

// ---------- two-spin master equation ----------

fn two_spin_evolve(cfg: &Config) -> Result<(Table, SvgSpec), CliError> {
    let p = driven_params(cfg)?;
    let d = dissipation(cfg)?;
    let dis = disentanglement(cfg, p.spins)?;
    let fr = frame(cfg)?;
    let t_end = cfg.f64("t_end", 10.0 * d.t1())?;
    let dt = cfg.f64("dt", spinres::dynamics::default_dt(&d, &dis))?;
    let dir = BlochDirection::new(
        cfg.f64("theta0", std::f64::consts::FRAC_PI_2)?,
        cfg.f64("phi0", 0.0)?,
    );
    let rho0 = dir.product_state(p.spins)?;
    let traj = evolve(&rho0, &p, &d, &dis, t_end, dt, fr)?;

    let mut t = Table::new(&["t", "kx", "ky", "kz", "purity"]);
    push_meta_params(
        &mut t,
        &[
            ("omega0", p.omega0),
            ("omega_a", p.omega_a),
            ("pump_l1", p.pump_l1),
            ("gamma_d", dis.gamma_d),
            ("t1", d.t1()),
            ("t2", d.t2()),
            ("dt", dt),
        ],
    );
    t.meta("frame", cfg.string("frame", "rwa"));
    for (k, time) in traj.times.iter().enumerate() {
        let m = traj.magnetization[k];
        t.push(vec![
            Value::F(*time),
            Value::F(m[0]),
            Value::F(m[1]),
            Value::F(m[2]),
            Value::F(traj.purity[k]),
        ]);
    }
    Ok((t, ("t".into(), vec!["kx".into(), "ky".into(), "kz".into()])))
}

fn two_spin_basins(cfg: &Config) -> Result<(Table, SvgSpec), CliError> {
    let p = driven_params(cfg)?;
    let d = dissipation(cfg)?;
    let dis = disentanglement(cfg, p.spins)?;
    let fr = frame(cfg)?;
    let n = cfg.usize("grid_count", 16)?;
    let t_end = cfg.f64("t_end", 40.0 * d.t1())?;
    let dt = cfg.f64("dt", spinres::dynamics::default_dt(&d, &dis))?;
    let grid = BlochDirection::equator_grid(n);
    let report = find_attractors(&p, &d, &dis, &grid, t_end, dt, fr)?;

    let mut t = Table::new(&["state", "phi0", "basin", "converged"]);
    t.meta("attractor_count", report.attractors.len());
    for (k, a) in report.attractors.iter().enumerate() {
        t.meta(
            &format!("attractor_{k}"),
            format!(
                "kx={} ky={} kz={} phase={}",
                a.magnetization[0], a.magnetization[1], a.magnetization[2], a.phase
            ),
        );
    }
    for (k, label) in report.basin_labels.iter().enumerate() {
        t.push(vec![
            Value::I(k as i64),
            Value::F(grid[k].phi),
            match label {
                Some(b) => Value::I(*b as i64),
                None => Value::Empty,
            },
            Value::S(label.is_some().to_string()),
        ]);
    }
    Ok((t, ("phi0".into(), vec!["basin".into()])))
}

// ---------- rapid-disentanglement model ----------

fn rd_dims_at(cfg: &Config, delta: f64) -> Result<RdDimensionless, CliError> {
    Ok(RdDimensionless::new(
        cfg.f64("alpha", 0.8)?,
        delta,
        cfg.f64("d_param", 1.6)?,
        cfg.f64("w", 1.0)?,
    ))
}

fn rd_steady(cfg: &Config, jitter: Jitter) -> Result<(Table, SvgSpec), CliError> {
    let axis = Axis::linear(
        "delta",
        cfg.f64("delta_start", -2.0)?,
        cfg.f64("delta_stop", 8.0)?,
        cfg.usize("delta_count", 201)?,
    )?;
    let mut t = Table::new(&["delta", "branch", "z", "stable"]);
    push_meta_params(
        &mut t,
        &[
            ("alpha", cfg.f64("alpha", 0.8)?),
            ("d_param", cfg.f64("d_param", 1.6)?),
            ("w", cfg.f64("w", 1.0)?),
        ],
    );
    for delta in jitter.apply(&axis) {
        let dims = rd_dims_at(cfg, delta)?;
        match steady_state_z(&dims) {
            Ok(ss) => {
                for (branch, r) in ss.physical.iter().enumerate() {
                    t.push(vec![
                        Value::F(delta),
                        Value::I(branch as i64),
                        Value::F(r.z),
                        Value::S(r.stable.to_string()),
                    ]);
                }
            }
            Err(e) => t.push(vec![
                Value::F(delta),
                Value::Empty,
                Value::Empty,
                Value::S(CliError::from(e).brief()),
            ]),
        }
    }
    Ok((t, ("delta".into(), vec!["z".into()])))
}

fn rd_onset(cfg: &Config) -> Result<(Table, SvgSpec), CliError> {
    let alpha = cfg.f64("alpha", 0.8)?;
    let d_param = cfg.f64("d_param", 1.6)?;
    let mut t = Table::new(&["z", "delta", "w"]);
    t.meta("alpha", alpha);
    t.meta("d_param", d_param);
    if let (Some(_), Some(_)) = (cfg.raw("delta_c"), cfg.raw("w_c")) {
        let fitted = infer_d_from_onset(
            cfg.require_f64("delta_c")?,
            cfg.require_f64("w_c")?,
            alpha,
        )?;
        t.meta("inferred_d", fitted);
        for p in bistability_onset(alpha, fitted)? {
            t.push(vec![Value::F(p.z), Value::F(p.delta), Value::F(p.w)]);
        }
    } else {
        for p in bistability_onset(alpha, d_param)? {
            t.push(vec![Value::F(p.z), Value::F(p.delta), Value::F(p.w)]);
        }
    }
    Ok((t, ("delta".into(), vec!["w".into()])))
}

fn rd_gain(cfg: &Config) -> Result<(Table, SvgSpec), CliError> {
    let delta = cfg.f64("delta", 0.0)?;
    let dims = rd_dims_at(cfg, delta)?;
    let z = match cfg.raw("z") {
        Some(_) => cfg.require_f64("z")?,
        None => {
            let ss = steady_state_z(&dims)?;
            ss.physical
                .iter()
                .rev()
                .find(|r| r.stable)
                .map(|r| r.z)
                .ok_or_else(|| CliError::Model("no stable operating point".into()))?
        }
    };
    let n = cfg.usize("phi_count", 181)?;
    let mut t = Table::new(&["phi_t", "g_p"]);
    t.meta("z", z);
    t.meta("alpha", dims.alpha);
    t.meta("delta", delta);
    for k in 0..n {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / n.max(2) as f64;
        match gain_phase(&dims, z, phi) {
            Ok(g) => t.push(vec![Value::F(phi), Value::F(g)]),
            Err(e) => t.push(vec![Value::F(phi), Value::S(CliError::from(e).brief())]),
        }
    }
    Ok((t, ("phi_t".into(), vec!["g_p".into()])))
}

// ---------- bosonization model ----------

fn boson_steady(cfg: &Config, jitter: Jitter) -> Result<(Table, SvgSpec), CliError> {
    let base = boson_params(cfg)?;
    let axis = Axis::linear(
        "omega_d",
        cfg.f64("od_start", 0.0)?,
        cfg.f64("od_stop", 12.0)?,
        cfg.usize("od_count", 201)?,
    )?;
    let mut t = Table::new(&["omega_d", "branch", "e", "stable"]);
    push_meta_params(
        &mut t,
        &[
            ("gamma1", base.gamma1),
            ("gamma2", base.gamma2),
            ("gamma3", base.gamma3),
            ("omega_k", base.omega_k),
            ("omega_t1", base.omega_t1),
        ],
    );
    for od in jitter.apply(&axis) {
        let p = BosonParams {
            omega0: base.omega_t + base.spins as f64 * base.omega_k - od,
            ..base
        };
        match steady_state_e(&p) {
            Ok(roots) => {
                for (branch, r) in roots.iter().enumerate() {
                    t.push(vec![
                        Value::F(od),
                        Value::I(branch as i64),
                        Value::F(r.e),
                        Value::S(r.stable.to_string()),
                    ]);
                }
            }
            Err(e) => t.push(vec![
                Value::F(od),
                Value::Empty,
                Value::Empty,
                Value::S(CliError::from(e).brief()),
            ]),
        }
    }
    Ok((t, ("omega_d".into(), vec!["e".into()])))
}

fn boson_onset(cfg: &Config) -> Result<(Table, SvgSpec), CliError> {
    let p = boson_params(cfg)?;
    let mut t = Table::new(&["omega_1c", "e_c"]);
    push_meta_params(
        &mut t,
        &[
            ("gamma", p.gamma()),
            ("gamma3", p.gamma3),
            ("omega_k", p.omega_k),
        ],
    );
    match bistability_threshold(&p) {
        Some(th) => t.push(vec![Value::F(th.omega_1c), Value::F(th.e_c)]),
        None => {
            t.meta("status", "no-bistability (|ω_K| < √3γ₃)");
        }
    }
    Ok((t, ("omega_1c".into(), vec!["e_c".into()])))
}

fn boson_gain_cmd(cfg: &Config) -> Result<(Table, SvgSpec), CliError> {
    let p = boson_params(cfg)?;
    let e_context = cfg.f64("e_context", 0.0)?;
    let gain = boson_gain(&p, e_context)?;
    let n = cfg.usize("phi_count", 181)?;
    let mut t = Table::new(&["phi_t", "g_m"]);
    t.meta("eta_a", gain.eta);
    t.meta("eta_a_small_anisotropy", eta_a_small_anisotropy(&p));
    t.meta("e_context", e_context);
    for k in 0..n {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / n.max(2) as f64;
        t.push(vec![Value::F(phi), Value::F(gain.evaluate(phi))]);
    }
    Ok((t, ("phi_t".into(), vec!["g_m".into()])))
}

// ---------- mapping commands ----------

fn power_axis(cfg: &Config) -> Result<Axis, CliError> {
    let start = cfg.power_mw("power_start", 1.0)?;
    let stop = cfg.power_mw("power_stop", 200.0)?;
    let count = cfg.usize("power_count", 41)?;
    match cfg.string("power_scale", "linear").as_str() {
        "linear" => Axis::linear("power_mw", start, stop, count),
        "log" => Axis::log("power_mw", start, stop, count),
        other => Err(CliError::Model(format!(
            "power_scale must be linear|log, got {other}"
        ))),
    }
}

fn detuning_axis(cfg: &Config) -> Result<Axis, CliError> {
    Axis::linear(
        "detuning_hz",
        cfg.f64("det_start_hz", -2.0)?,
        cfg.f64("det_stop_hz", 2.0)?,
        cfg.usize("det_count", 201)?,
    )
}

fn rd_model(cfg: &Config) -> Result<RapidDisentModel, CliError> {
    let cal = calibration(cfg)?;
    let alpha = match cfg.raw("alpha") {
        Some(_) => cfg.require_f64("alpha")?,
        None => 1.0 - cfg.power_mw("p_l", 0.0)? * cal.wa2t22_per_mw,
    };
    let d_param = match (cfg.raw("d_param"), cfg.raw("delta_c"), cfg.raw("w_c")) {
        (Some(_), _, _) => cfg.require_f64("d_param")?,
        (None, Some(_), Some(_)) => infer_d_from_onset(
            cfg.require_f64("delta_c")?,
            cfg.require_f64("w_c")?,
            alpha,
        )?,
        _ => 1.6,
    };
    Ok(RapidDisentModel {
        cal,
        alpha,
        d_param,
    })
}

fn boson_model(cfg: &Config) -> Result<BosonizationModel, CliError> {
    let base = boson_params(cfg)?;
    BosonizationModel::new(base, cfg.power_mw("p_c", 10f64.powf(1.35))?)
}

fn map_bistability_cmd(cfg: &Config, jitter: Jitter) -> Result<(Table, SvgSpec), CliError> {
    let powers = jitter.apply(&power_axis(cfg)?);
    let dets = detuning_axis(cfg)?.values();
    let map = match cfg.string("model", "rapid-disent").as_str() {
        "rapid-disent" => {
            let m = rd_model(cfg)?;
            map_bistability(&m, &powers, &dets)?
        }
        "bosonization" => {
            let m = boson_model(cfg)?;
            map_bistability(&m, &powers, &dets)?
        }
        other => {
            return Err(CliError::Model(format!(
                "model must be rapid-disent|bosonization, got {other}"
            )))
        }
    };
    let t = map.to_table();
    Ok((
        t,
        (
            "power_mw".into(),
            vec!["up_jump_hz".into(), "down_jump_hz".into(), "peak_hz".into()],
        ),
    ))
}

fn peak_curves_cmd(cfg: &Config, jitter: Jitter) -> Result<(Table, SvgSpec), CliError> {
    let cal = calibration(cfg)?;
    let p_t = jitter.apply(&power_axis(cfg)?);
    let p_l = f64_list(cfg, "p_l_list_mw", &[0.0, 320.0, 560.0])?;
    let alpha_ref = 1.0 - p_l[0] * cal.wa2t22_per_mw;
    let d_param = match (cfg.raw("d_param"), cfg.raw("delta_c"), cfg.raw("w_c")) {
        (Some(_), _, _) => cfg.require_f64("d_param")?,
        (None, Some(_), Some(_)) => infer_d_from_onset(
            cfg.require_f64("delta_c")?,
            cfg.require_f64("w_c")?,
            alpha_ref,
        )?,
        _ => 1.6,
    };
    let t = peak_curves(&p_t, &p_l, &cal, d_param)?;
    Ok((t, ("p_t_mw".into(), vec!["f_dpp_hz".into()])))
}

fn compare_models_cmd(cfg: &Config, jitter: Jitter) -> Result<(Table, SvgSpec), CliError> {
    let powers = jitter.apply(&power_axis(cfg)?);
    let dets = detuning_axis(cfg)?.values();
    let rd = rd_model(cfg)?;
    let boson = boson_model(cfg)?;
    let cmp = compare_models(&rd, &boson, &powers, &dets)?;

    // internal consistency: the summary differences must equal a
    // recomputation from the two maps
    debug_assert!({
        let t = cmp.to_table();
        t.rows.iter().enumerate().all(|(k, row)| {
            match (&row[1], &row[3], &row[5]) {
                (Value::F(a), Value::F(b), Value::F(d)) => (a - b - d).abs() < 1e-12,
                _ => true,
            }
            .then_some(k)
            .is_some()
        })
    });
    let t = cmp.to_table();
    Ok((
        t,
        (
            "power_mw".into(),
            vec![
                "rd_up_hz".into(),
                "rd_down_hz".into(),
                "boson_up_hz".into(),
                "boson_down_hz".into(),
            ],
        ),
    ))
}
