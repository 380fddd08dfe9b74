use super::params::DissipationParams;
use crate::hilbert::{ComplexMatrix, DensityMatrix, SpinOperatorSet};

/// Pre-scaled collapse operators √rate·c with cached c†c, so the dissipator
/// costs three matrix products per channel inside integration loops.
#[derive(Debug, Clone)]
pub(crate) struct LindbladContext {
    channels: Vec<(ComplexMatrix, ComplexMatrix)>,
}

impl LindbladContext {
    pub(crate) fn new(d: &DissipationParams, ops: &SpinOperatorSet) -> Self {
        let mut channels = Vec::new();
        for spin in &ops.per_spin {
            // unit-entry raising/lowering are S_{l,±}/2
            let lower = spin.minus.scale_re(0.5);
            let raise = spin.plus.scale_re(0.5);
            for (rate, c) in [
                (d.gamma1 * (d.n0 + 1.0), lower),
                (d.gamma1 * d.n0, raise),
                (0.5 * d.gamma_phi, spin.z.clone()),
            ] {
                if rate == 0.0 {
                    continue;
                }
                let scaled = c.scale_re(rate.sqrt());
                let cdc = &scaled.conjugate_transpose() * &scaled;
                channels.push((scaled, cdc));
            }
        }
        LindbladContext { channels }
    }

    /// Σ_c cρc† − ½{c†c, ρ}.
    pub(crate) fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(rho.dim());
        for (c, cdc) in &self.channels {
            let sandwich = &(c * rho) * &c.conjugate_transpose();
            let anti = cdc.anticommutator(rho);
            out = &out + &(&sandwich - &anti.scale_re(0.5));
        }
        out
    }
}

/// Thermal per-spin Lindblad dissipator: lowering at Γ₁(n̂₀+1), raising at
/// Γ₁n̂₀, dephasing via S_{l,z} at Γ_φ/2. Traceless and Hermitian.
pub fn lindblad_dissipator(
    rho: &DensityMatrix,
    d: &DissipationParams,
    ops: &SpinOperatorSet,
) -> ComplexMatrix {
    LindbladContext::new(d, ops).apply(rho.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::collective_spin_ops;
    use num_complex::Complex64;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_rates_give_zero() {
        let ops = collective_spin_ops(2).unwrap();
        let d = DissipationParams::from_rates(0.0, 0.0, 0.0).unwrap();
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]);
        assert!(lindblad_dissipator(&rho, &d, &ops).max_abs() < 1e-15);
    }

    #[test]
    fn traceless_and_hermitian() {
        let ops = collective_spin_ops(2).unwrap();
        let d = DissipationParams::from_rates(1.3, 0.6, 0.25).unwrap();
        let psi = [c64(0.5, 0.1), c64(0.2, -0.3), c64(0.1, 0.0), c64(0.7, 0.2)];
        let rho = DensityMatrix::pure(&psi, vec![2, 2]).unwrap();
        let l = lindblad_dissipator(&rho, &d, &ops);
        assert!(l.trace().norm() < 1e-11);
        assert!(l.hermiticity_residual() < 1e-12);
    }

    #[test]
    fn excited_spin_relaxes_at_1_over_t1() {
        // L = 1, n̂₀ = 0, ρ = |↑⟩⟨↑|: d⟨σ_z⟩/dt = −Γ₁(⟨σ_z⟩ + 1) = −2Γ₁
        let ops = collective_spin_ops(1).unwrap();
        let d = DissipationParams::from_rates(0.8, 0.0, 0.0).unwrap();
        let rho = DensityMatrix::pure(&[c64(1.0, 0.0), c64(0.0, 0.0)], vec![2]).unwrap();
        let l = lindblad_dissipator(&rho, &d, &ops);
        let dsz = ops.s_z.trace_product(&l).re;
        assert!((dsz + 2.0 * d.gamma1).abs() < 1e-12);
        // and the thermal relation 1/T1 = Γ₁(2n̂₀+1) holds by construction
        assert!((1.0 / d.t1() - d.gamma1).abs() < 1e-12);
    }

    #[test]
    fn coherence_decays_at_1_over_t2() {
        // single spin along +x: d⟨σ_x⟩/dt = −⟨σ_x⟩/T2
        let ops = collective_spin_ops(1).unwrap();
        let d = DissipationParams::from_times(0.4, 0.25, 0.0).unwrap();
        let inv = 1.0 / 2f64.sqrt();
        let rho = DensityMatrix::pure(&[c64(inv, 0.0), c64(inv, 0.0)], vec![2]).unwrap();
        let l = lindblad_dissipator(&rho, &d, &ops);
        let sx = ops.s_x();
        let dsx = sx.trace_product(&l).re;
        let sx0 = rho.expectation(&sx);
        assert!((dsx + sx0 / d.t2()).abs() < 1e-12, "dsx = {dsx}");
    }
}
