use num_complex::Complex64;

use super::params::DrivenSpinParams;
use crate::hilbert::{collective_spin_ops, ComplexMatrix, SpinOperatorSet};
use crate::{Error, Result};

/// Time-independent part of the Hamiltonian: the anisotropy
/// (ω_K(S₊S₋+S₋S₊) + ω_A(S₊²+S₋²))/8.
pub(crate) fn anisotropy_term(p: &DrivenSpinParams, ops: &SpinOperatorSet) -> ComplexMatrix {
    let symmetric = ops.s_plus.anticommutator(&ops.s_minus);
    let squares = &(&ops.s_plus * &ops.s_plus) + &(&ops.s_minus * &ops.s_minus);
    (&symmetric.scale_re(p.omega_k) + &squares.scale_re(p.omega_a)).scale_re(1.0 / 8.0)
}

pub(crate) fn assemble_hamiltonian(
    p: &DrivenSpinParams,
    ops: &SpinOperatorSet,
    aniso: &ComplexMatrix,
    t: f64,
) -> ComplexMatrix {
    let mut h = aniso.clone();
    h.add_assign_scaled(&ops.s_z, Complex64::new(-0.5 * p.omega_z(t), 0.0));
    let drive = p.drive_t1() * Complex64::from_polar(1.0, p.omega_t() * t) / 4.0;
    h.add_assign_scaled(&ops.s_plus, drive);
    h.add_assign_scaled(&ops.s_minus, drive.conj());
    h
}

/// Closed-system Hamiltonian at time t:
/// −ω_z(t)S_z/2 + (ω_K(S₊S₋+S₋S₊) + ω_A(S₊²+S₋²))/8
/// + (S₊Ω_T1 e^{iω_T t} + h.c.)/4.
pub fn build_hamiltonian(p: &DrivenSpinParams, t: f64) -> Result<ComplexMatrix> {
    p.validate()?;
    let ops = collective_spin_ops(p.spins)?;
    let aniso = anisotropy_term(p, &ops);
    Ok(assemble_hamiltonian(p, &ops, &aniso, t))
}

/// Explicit 4×4 two-spin Hamiltonian in the |s₁s₂⟩ basis (↑ before ↓), with
/// ω_t = (Ω_T1/2)e^{iω_T t}:
///
/// ```text
/// ⎡ −ω_z+ω_K   ω_t    ω_t    ω_A   ⎤
/// ⎢  ω_t*      ω_K    ω_K    ω_t   ⎥
/// ⎢  ω_t*      ω_K    ω_K    ω_t   ⎥
/// ⎣  ω_A       ω_t*   ω_t*   ω_z+ω_K ⎦
/// ```
pub fn build_two_spin_hamiltonian(p: &DrivenSpinParams, t: f64) -> Result<ComplexMatrix> {
    p.validate()?;
    if p.spins != 2 {
        return Err(Error::invalid(format!(
            "two-spin builder requires L = 2, got {}",
            p.spins
        )));
    }
    let wz = Complex64::new(p.omega_z(t), 0.0);
    let wk = Complex64::new(p.omega_k, 0.0);
    let wa = Complex64::new(p.omega_a, 0.0);
    let wt = 0.5 * p.drive_t1() * Complex64::from_polar(1.0, p.omega_t() * t);
    let wt_c = wt.conj();
    Ok(ComplexMatrix::from_rows(
        4,
        &[
            -wz + wk, wt, wt, wa, //
            wt_c, wk, wk, wt, //
            wt_c, wk, wk, wt, //
            wa, wt_c, wt_c, wz + wk,
        ],
    ))
}

/// Margin below which the rotating-wave reduction is flagged as
/// extrapolated.
pub const RWA_MARGIN: f64 = 100.0;

/// Time-independent rotating-frame two-spin Hamiltonian,
/// −(ω_A/2ω₀)·[corner block: diag ±ω_A, anti-diagonal Ω_L1].
///
/// Hard preconditions: L = 2, ω_K = 0, Ω_T1 = 0, ω_d = 0, ω_f = 0, ω₀ ≠ 0.
/// The reduction is derived for Ω_L1 ≪ ω₀ and ω_A ≪ ω₀; outside a
/// factor-[`RWA_MARGIN`] margin a warning is logged and the matrix is still
/// returned (sub-resonant studies use it as a model in its own right).
pub fn build_two_spin_rwa(p: &DrivenSpinParams) -> Result<ComplexMatrix> {
    p.validate()?;
    if p.spins != 2 {
        return Err(Error::invalid("rotating-frame builder requires L = 2"));
    }
    if p.omega_k != 0.0 || p.drive_t1_mag != 0.0 || p.omega_d != 0.0 || p.omega_f != 0.0 {
        return Err(Error::invalid(
            "rotating-frame builder requires ω_K = 0, Ω_T1 = 0, ω_d = 0, ω_f = 0",
        ));
    }
    if p.omega0 == 0.0 {
        return Err(Error::invalid("rotating-frame builder requires ω₀ ≠ 0"));
    }
    if p.omega0.abs() < RWA_MARGIN * p.pump_l1.abs()
        || p.omega0.abs() < RWA_MARGIN * p.omega_a.abs()
    {
        log::warn!(
            "rotating-wave reduction outside its validity margin: ω₀ = {}, \
             Ω_L1 = {}, ω_A = {} (wants ω₀ ≳ {}×max)",
            p.omega0,
            p.pump_l1,
            p.omega_a,
            RWA_MARGIN
        );
    }
    let c = -p.omega_a / (2.0 * p.omega0);
    let mut h = ComplexMatrix::zeros(4);
    h[(0, 0)] = Complex64::new(c * p.omega_a, 0.0);
    h[(3, 3)] = Complex64::new(-c * p.omega_a, 0.0);
    h[(0, 3)] = Complex64::new(c * p.pump_l1, 0.0);
    h[(3, 0)] = Complex64::new(c * p.pump_l1, 0.0);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn base_params() -> DrivenSpinParams {
        DrivenSpinParams {
            omega0: 10.0,
            omega_k: 0.7,
            omega_a: 1.3,
            omega_d: 0.2,
            omega_f: 0.1,
            pump_l1: 0.9,
            drive_t1_mag: 0.4,
            phi_t: 0.6,
            spins: 2,
        }
    }

    #[test]
    fn zeeman_only_is_diagonal() {
        let p = DrivenSpinParams {
            omega_k: 0.0,
            omega_a: 0.0,
            pump_l1: 0.0,
            drive_t1_mag: 0.0,
            ..base_params()
        };
        let h = build_hamiltonian(&p, 0.3).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(h[(i, j)].norm() < 1e-15);
                }
            }
        }
        // −ω₀ S_z/2 on |↑↑⟩ gives −ω₀
        assert!((h[(0, 0)].re + p.omega0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_at_random_times() {
        let p = base_params();
        for &t in &[0.0, 0.37, 1.94, 12.3] {
            let h = build_hamiltonian(&p, t).unwrap();
            assert!(h.hermiticity_residual() < 1e-12);
        }
    }

    #[test]
    fn corner_entries_are_the_anisotropy() {
        let p = base_params();
        let h = build_two_spin_hamiltonian(&p, 0.8).unwrap();
        assert!((h[(0, 3)] - Complex64::new(p.omega_a, 0.0)).norm() < 1e-14);
        assert!((h[(3, 0)] - Complex64::new(p.omega_a, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn drive_entries_vanish_without_transverse_drive() {
        let mut p = base_params();
        p.drive_t1_mag = 0.0;
        let h = build_two_spin_hamiltonian(&p, 0.8).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert!(h[(i, j)].norm() < 1e-15);
        }
    }

    #[test]
    fn two_spin_builders_agree() {
        let p = base_params();
        for &t in &[0.0, 0.21, 0.77, 3.1] {
            let explicit = build_two_spin_hamiltonian(&p, t).unwrap();
            let generic = build_hamiltonian(&p, t).unwrap();
            assert!(
                explicit.max_abs_diff(&generic) < 1e-12,
                "t = {t}: {:?} vs {:?}",
                explicit,
                generic
            );
        }
    }

    #[test]
    fn anisotropy_to_zeeman_ratio_matches_tan_q() {
        // ω_K = 0, Ω_T1 = 0, pump off, t = 0: the (|↑↑⟩,|↓↓⟩) block is
        // −ω₀[[1, tan q],[tan q, −1]] with tan q = −ω_A/ω₀
        let p = DrivenSpinParams {
            omega_k: 0.0,
            drive_t1_mag: 0.0,
            omega_d: 0.0,
            pump_l1: 0.0,
            ..base_params()
        };
        let h = build_hamiltonian(&p, 0.0).unwrap();
        let tan_q = h[(0, 3)].re / h[(0, 0)].re;
        assert!((tan_q - (-p.omega_a / p.omega0)).abs() < 1e-12);
    }

    #[test]
    fn rwa_matrix_forms() {
        let p = DrivenSpinParams {
            omega0: 1000.0,
            omega_k: 0.0,
            omega_a: 1.0,
            omega_d: 0.0,
            omega_f: 0.0,
            pump_l1: 1.5,
            drive_t1_mag: 0.0,
            phi_t: 0.0,
            spins: 2,
        };
        let h = build_two_spin_rwa(&p).unwrap();
        let c = -1.0 / 2000.0;
        assert!((h[(0, 0)].re - c).abs() < 1e-15);
        assert!((h[(3, 3)].re + c).abs() < 1e-15);
        assert!((h[(0, 3)].re - 1.5 * c).abs() < 1e-15);
        // Ω_L1 = 0: diagonal −ω_A²/2ω₀, 0, 0, +ω_A²/2ω₀
        let p0 = DrivenSpinParams { pump_l1: 0.0, ..p };
        let h0 = build_two_spin_rwa(&p0).unwrap();
        assert!((h0[(0, 0)].re + 1.0 / 2000.0).abs() < 1e-15);
        assert!(h0[(0, 3)].norm() < 1e-15);
        // ω_A = 0: zero matrix
        let pa = DrivenSpinParams { omega_a: 0.0, ..p };
        assert!(build_two_spin_rwa(&pa).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn rwa_preconditions_are_hard() {
        let mut p = base_params();
        p.omega_k = 0.0;
        p.drive_t1_mag = 0.0;
        p.omega_d = 0.0;
        p.omega_f = 0.0;
        assert!(build_two_spin_rwa(&p).is_ok());
        assert!(build_two_spin_rwa(&DrivenSpinParams { omega_k: 0.1, ..p }).is_err());
        assert!(build_two_spin_rwa(&DrivenSpinParams {
            drive_t1_mag: 0.1,
            ..p
        })
        .is_err());
        assert!(build_two_spin_rwa(&DrivenSpinParams { omega_d: 0.1, ..p }).is_err());
        assert!(build_two_spin_rwa(&DrivenSpinParams { omega_f: 0.1, ..p }).is_err());
        assert!(build_two_spin_rwa(&DrivenSpinParams { spins: 3, ..p }).is_err());
    }
}
