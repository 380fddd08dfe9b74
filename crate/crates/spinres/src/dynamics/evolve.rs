use num_complex::Complex64;

use super::disentangle::{term_from_theta, RelativeEntropyTheta, ThetaBuilder};
use super::hamiltonian::{anisotropy_term, assemble_hamiltonian, build_two_spin_rwa};
use super::lindblad::LindbladContext;
use super::params::{DisentanglementConfig, DissipationParams, DrivenSpinParams};
use crate::hilbert::{
    collective_spin_ops, hermitian_eig, ComplexMatrix, DensityMatrix, SpinOperatorSet,
};
use crate::{Error, Result};

/// Integration frame: the lab-frame Hamiltonian with explicit drive phases,
/// or the time-independent rotating-frame two-spin reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Full,
    Rwa,
}

/// Worst-case integration diagnostics gathered along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport {
    /// max |Tr ρ − 1| of a single step, measured before renormalization.
    pub max_step_trace_error: f64,
    /// max entrywise |ρ − ρ†| of a single step, before re-hermitization.
    pub max_step_hermiticity_residual: f64,
    /// Smallest eigenvalue seen at any sample.
    pub min_eigenvalue: f64,
    /// Largest |⟨S⟩| seen at any sample.
    pub max_magnetization_norm: f64,
    /// Step size used.
    pub dt: f64,
}

/// Sampled magnetization history of one master-equation run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// (⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩) at each sample.
    pub magnetization: Vec<[f64; 3]>,
    pub purity: Vec<f64>,
    pub final_state: DensityMatrix,
    pub invariants: InvariantReport,
    /// Density-matrix snapshots at the sample times, when requested.
    pub snapshots: Option<Vec<DensityMatrix>>,
    /// e^{iω_T·t_end} for lab-frame runs, 1 in the rotating frame; rotates
    /// endpoint transverse components into the drive frame.
    frame_phase: Complex64,
}

impl Trajectory {
    pub fn final_magnetization(&self) -> [f64; 3] {
        *self.magnetization.last().expect("at least one sample")
    }

    /// ⟨S₊⟩ of the final state, rotated to the frame co-rotating at ω_T when
    /// the run was in the lab frame.
    pub fn final_s_plus_rotating(&self) -> Complex64 {
        let m = self.final_magnetization();
        Complex64::new(m[0], m[1]) * self.frame_phase
    }

    pub(crate) fn set_frame_phase(&mut self, phase: Complex64) {
        self.frame_phase = phase;
    }
}

/// Suggested step: min(T1, T2, 1/γ_D)/200.
pub fn default_dt(d: &DissipationParams, cfg: &DisentanglementConfig) -> f64 {
    let mut scale = f64::INFINITY;
    if d.gamma1 > 0.0 {
        scale = scale.min(d.t1());
        scale = scale.min(d.t2());
    } else if d.gamma_phi > 0.0 {
        scale = scale.min(1.0 / d.gamma_phi);
    }
    if cfg.gamma_d > 0.0 {
        scale = scale.min(1.0 / cfg.gamma_d);
    }
    if !scale.is_finite() {
        scale = 1.0;
    }
    scale / 200.0
}

pub(crate) struct MmeContext<'a> {
    pub ops: SpinOperatorSet,
    aniso: ComplexMatrix,
    lindblad: LindbladContext,
    p: DrivenSpinParams,
    cfg: DisentanglementConfig,
    theta: &'a dyn ThetaBuilder,
    rwa_h: Option<ComplexMatrix>,
}

impl<'a> MmeContext<'a> {
    pub(crate) fn new(
        p: &DrivenSpinParams,
        d: &DissipationParams,
        cfg: &DisentanglementConfig,
        frame: Frame,
        theta: &'a dyn ThetaBuilder,
    ) -> Result<Self> {
        p.validate()?;
        d.validate()?;
        cfg.validate()?;
        if cfg.dim() != 1 << p.spins {
            return Err(Error::invalid(format!(
                "partition {:?} does not span the {}-spin space",
                cfg.partition, p.spins
            )));
        }
        let ops = collective_spin_ops(p.spins)?;
        let aniso = anisotropy_term(p, &ops);
        let lindblad = LindbladContext::new(d, &ops);
        let rwa_h = match frame {
            Frame::Full => None,
            Frame::Rwa => Some(build_two_spin_rwa(p)?),
        };
        Ok(MmeContext {
            ops,
            aniso,
            lindblad,
            p: *p,
            cfg: cfg.clone(),
            theta,
            rwa_h,
        })
    }

    fn hamiltonian(&self, t: f64) -> ComplexMatrix {
        match &self.rwa_h {
            Some(h) => h.clone(),
            None => assemble_hamiltonian(&self.p, &self.ops, &self.aniso, t),
        }
    }

    /// i[ρ, ℋ(t)] + 𝓛ρ + (−Θρ − ρΘ + 2⟨Θ⟩ρ).
    pub(crate) fn rhs(&self, rho: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
        let h = self.hamiltonian(t);
        let mut out = (&(rho * &h) - &(&h * rho)).scale(Complex64::I);
        out = &out + &self.lindblad.apply(rho);
        if self.cfg.gamma_d > 0.0 {
            let dm = DensityMatrix::new_unchecked(rho.clone(), self.cfg.partition.clone());
            let theta = self.theta.theta(&dm, &self.cfg)?;
            out = &out + &term_from_theta(&theta, rho);
        }
        Ok(out)
    }
}

/// Right-hand side of the modified master equation at time t.
pub fn mme_rhs(
    rho: &DensityMatrix,
    t: f64,
    p: &DrivenSpinParams,
    d: &DissipationParams,
    cfg: &DisentanglementConfig,
) -> Result<ComplexMatrix> {
    let ctx = MmeContext::new(p, d, cfg, Frame::Full, &RelativeEntropyTheta)?;
    ctx.rhs(rho.matrix(), t)
}

/// Fixed-step 4th-order integration of the modified master equation.
///
/// Each step re-hermitizes ((ρ+ρ†)/2) and renormalizes the trace; trace and
/// hermiticity drifts are recorded before those corrections. Positivity
/// beyond −1e-6 at a sample aborts with an integration error.
pub fn evolve(
    rho0: &DensityMatrix,
    p: &DrivenSpinParams,
    d: &DissipationParams,
    cfg: &DisentanglementConfig,
    t_end: f64,
    dt: f64,
    frame: Frame,
) -> Result<Trajectory> {
    evolve_with_theta(rho0, p, d, cfg, t_end, dt, frame, &RelativeEntropyTheta, false)
}

/// [`evolve`] with a custom Θ strategy and optional state snapshots.
#[allow(clippy::too_many_arguments)]
pub fn evolve_with_theta(
    rho0: &DensityMatrix,
    p: &DrivenSpinParams,
    d: &DissipationParams,
    cfg: &DisentanglementConfig,
    t_end: f64,
    dt: f64,
    frame: Frame,
    theta: &dyn ThetaBuilder,
    keep_snapshots: bool,
) -> Result<Trajectory> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::invalid("evolve: dt must be positive"));
    }
    if rho0.dim() != 1 << p.spins {
        return Err(Error::invalid("initial state dimension does not match L"));
    }
    let ctx = MmeContext::new(p, d, cfg, frame, theta)?;
    let s_x = ctx.ops.s_x();
    let s_y = ctx.ops.s_y();

    let steps = (t_end / dt).round().max(1.0) as usize;
    let stride = (steps / 1024).max(1);

    let mut rho = rho0.matrix().clone();
    let mut t = 0.0;
    let mut times = Vec::new();
    let mut magnetization = Vec::new();
    let mut purity = Vec::new();
    let mut snapshots = keep_snapshots.then(Vec::new);
    let mut report = InvariantReport {
        max_step_trace_error: 0.0,
        max_step_hermiticity_residual: 0.0,
        min_eigenvalue: f64::INFINITY,
        max_magnetization_norm: 0.0,
        dt,
    };

    let sample = |rho: &ComplexMatrix,
                      t: f64,
                      report: &mut InvariantReport,
                      times: &mut Vec<f64>,
                      magnetization: &mut Vec<[f64; 3]>,
                      purity: &mut Vec<f64>,
                      snapshots: &mut Option<Vec<DensityMatrix>>|
     -> Result<()> {
        let kx = s_x.trace_product(rho).re;
        let ky = s_y.trace_product(rho).re;
        let kz = ctx.ops.s_z.trace_product(rho).re;
        let norm = (kx * kx + ky * ky + kz * kz).sqrt();
        report.max_magnetization_norm = report.max_magnetization_norm.max(norm);
        let min_eig = hermitian_eig(&rho.hermitian_part())?.0[0];
        report.min_eigenvalue = report.min_eigenvalue.min(min_eig);
        if min_eig < -1e-6 {
            return Err(Error::Integration(format!(
                "positivity violated at t = {t:.6} (min eigenvalue {min_eig:.3e}); \
                 retry with a smaller dt"
            )));
        }
        times.push(t);
        magnetization.push([kx, ky, kz]);
        purity.push(rho.trace_product(rho).re);
        if let Some(s) = snapshots {
            s.push(DensityMatrix::new_unchecked(
                rho.clone(),
                cfg.partition.clone(),
            ));
        }
        Ok(())
    };

    sample(
        &rho,
        0.0,
        &mut report,
        &mut times,
        &mut magnetization,
        &mut purity,
        &mut snapshots,
    )?;

    for step in 0..steps {
        let k1 = ctx.rhs(&rho, t)?;
        let k2 = ctx.rhs(&add_scaled(&rho, &k1, 0.5 * dt), t + 0.5 * dt)?;
        let k3 = ctx.rhs(&add_scaled(&rho, &k2, 0.5 * dt), t + 0.5 * dt)?;
        let k4 = ctx.rhs(&add_scaled(&rho, &k3, dt), t + dt)?;
        let mut next = rho.clone();
        next.add_assign_scaled(&k1, Complex64::new(dt / 6.0, 0.0));
        next.add_assign_scaled(&k2, Complex64::new(dt / 3.0, 0.0));
        next.add_assign_scaled(&k3, Complex64::new(dt / 3.0, 0.0));
        next.add_assign_scaled(&k4, Complex64::new(dt / 6.0, 0.0));
        if !next.all_finite() {
            return Err(Error::Integration(format!(
                "state became non-finite at t = {t:.6}; retry with a smaller dt"
            )));
        }

        report.max_step_hermiticity_residual = report
            .max_step_hermiticity_residual
            .max(next.hermiticity_residual());
        let mut next = next.hermitian_part();
        let tr = next.trace().re;
        report.max_step_trace_error = report.max_step_trace_error.max((tr - 1.0).abs());
        next = next.scale_re(1.0 / tr);

        rho = next;
        t += dt;
        if (step + 1) % stride == 0 || step + 1 == steps {
            sample(
                &rho,
                t,
                &mut report,
                &mut times,
                &mut magnetization,
                &mut purity,
                &mut snapshots,
            )?;
        }
    }

    let final_state = DensityMatrix::new(rho, cfg.partition.clone()).map_err(|e| {
        Error::Integration(format!("final state violates density-matrix invariants: {e}"))
    })?;
    let mut traj = Trajectory {
        times,
        magnetization,
        purity,
        final_state,
        invariants: report,
        snapshots,
        frame_phase: Complex64::ONE,
    };
    if frame == Frame::Full {
        traj.set_frame_phase(Complex64::from_polar(1.0, p.omega_t() * t));
    }
    Ok(traj)
}

fn add_scaled(base: &ComplexMatrix, delta: &ComplexMatrix, h: f64) -> ComplexMatrix {
    let mut out = base.clone();
    out.add_assign_scaled(delta, Complex64::new(h, 0.0));
    out
}
