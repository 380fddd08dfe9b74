use num_complex::Complex64;

use super::params::DisentanglementConfig;
use crate::hilbert::{log_of_hermitian, partial_trace, ComplexMatrix, DensityMatrix};
use crate::{Error, Result};

/// Strategy producing the disentanglement operator Θ(ρ).
///
/// Any implementation should be Hermitian, vanish on product states, and be
/// covariant under subsystem unitaries; the master-equation term built from
/// it is then traceless and norm-preserving.
pub trait ThetaBuilder: Sync {
    fn theta(&self, rho: &DensityMatrix, cfg: &DisentanglementConfig) -> Result<ComplexMatrix>;
}

/// Default construction Θ(ρ) = (γ_D/2)·(log ρ − log(⊗_n ρ_n)), the
/// relative-entropy gradient toward the product of marginals, with
/// eigenvalue-floored logarithms.
///
/// This is a reconstruction: it has the three properties asserted of the
/// disentanglement operator (Hermitian, zero on product states, covariant
/// under subsystem unitaries) and contracts mutual information, but other
/// constructions with the same properties exist and can be swapped in via
/// [`ThetaBuilder`].
#[derive(Debug, Clone, Copy, Default)]
pub struct RelativeEntropyTheta;

impl ThetaBuilder for RelativeEntropyTheta {
    fn theta(&self, rho: &DensityMatrix, cfg: &DisentanglementConfig) -> Result<ComplexMatrix> {
        check_partition(rho, cfg)?;
        let n = rho.subsystem_dims().len();
        let mut product: Option<DensityMatrix> = None;
        for k in 0..n {
            let r = partial_trace(rho, &[k])?;
            product = Some(match product {
                None => r,
                Some(p) => p.tensor(&r),
            });
        }
        let product = product.expect("at least one subsystem");
        let log_rho = log_of_hermitian(rho.matrix(), cfg.eps)?;
        let log_prod = log_of_hermitian(product.matrix(), cfg.eps)?;
        Ok((&log_rho - &log_prod).scale_re(0.5 * cfg.gamma_d))
    }
}

fn check_partition(rho: &DensityMatrix, cfg: &DisentanglementConfig) -> Result<()> {
    if rho.subsystem_dims() != cfg.partition.as_slice() {
        return Err(Error::invalid(format!(
            "partition mismatch: state has {:?}, config has {:?}",
            rho.subsystem_dims(),
            cfg.partition
        )));
    }
    if cfg.partition.len() < 2 {
        return Err(Error::invalid(
            "disentanglement needs at least two subsystems",
        ));
    }
    Ok(())
}

/// Disentanglement operator with the default construction.
pub fn build_theta(rho: &DensityMatrix, cfg: &DisentanglementConfig) -> Result<ComplexMatrix> {
    RelativeEntropyTheta.theta(rho, cfg)
}

/// The nonlinear master-equation term −Θρ − ρΘ + 2⟨Θ⟩ρ for a given Θ.
pub(crate) fn term_from_theta(theta: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = &(theta * rho).scale_re(-1.0) - &(rho * theta);
    let mean = theta.trace_product(rho).re;
    out.add_assign_scaled(rho, Complex64::new(2.0 * mean, 0.0));
    out
}

/// −Θρ − ρΘ + 2⟨Θ⟩ρ with the default Θ; exactly traceless for Hermitian Θ
/// and zero on (full-rank) product states.
pub fn disentanglement_term(
    rho: &DensityMatrix,
    cfg: &DisentanglementConfig,
) -> Result<ComplexMatrix> {
    disentanglement_term_with(rho, cfg, &RelativeEntropyTheta)
}

/// Same term with a caller-supplied Θ strategy.
pub fn disentanglement_term_with(
    rho: &DensityMatrix,
    cfg: &DisentanglementConfig,
    builder: &dyn ThetaBuilder,
) -> Result<ComplexMatrix> {
    if cfg.gamma_d == 0.0 {
        check_partition(rho, cfg)?;
        return Ok(ComplexMatrix::zeros(rho.dim()));
    }
    let theta = builder.theta(rho, cfg)?;
    Ok(term_from_theta(&theta, rho.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_density(dims: Vec<usize>, seed: &mut f64) -> DensityMatrix {
        let dim: usize = dims.iter().product();
        let next = move |s: &mut f64| {
            *s = (*s * 9301.0 + 49297.0) % 233280.0;
            *s / 233280.0 - 0.5
        };
        let mut g = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                g[(i, j)] = c(next(seed), next(seed));
            }
        }
        let m = &g * &g.conjugate_transpose();
        let tr = m.trace().re;
        DensityMatrix::new(m.scale_re(1.0 / tr), dims).unwrap()
    }

    fn random_unitary2(seed: &mut f64) -> ComplexMatrix {
        let next = move |s: &mut f64| {
            *s = (*s * 9301.0 + 49297.0) % 233280.0;
            *s / 233280.0 - 0.5
        };
        let a = next(seed) * std::f64::consts::PI;
        let b = next(seed) * std::f64::consts::PI;
        let g = next(seed) * std::f64::consts::PI;
        let (ca, sa) = (a.cos(), a.sin());
        ComplexMatrix::from_rows(
            2,
            &[
                Complex64::from_polar(ca, b),
                Complex64::from_polar(sa, g),
                Complex64::from_polar(-sa, -g),
                Complex64::from_polar(ca, -b),
            ],
        )
    }

    #[test]
    fn vanishes_on_full_rank_product_states() {
        let mut seed = 5.5;
        let a = random_density(vec![2], &mut seed);
        let b = random_density(vec![2], &mut seed);
        let rho = a.tensor(&b);
        let cfg = DisentanglementConfig::per_spin(100.0, 2).unwrap();
        let term = disentanglement_term(&rho, &cfg).unwrap();
        assert!(term.max_abs() < 1e-9, "residual {}", term.max_abs());
    }

    #[test]
    fn term_is_traceless_and_hermitian() {
        let mut seed = 9.1;
        let rho = random_density(vec![2, 2], &mut seed);
        let cfg = DisentanglementConfig::per_spin(50.0, 2).unwrap();
        let term = disentanglement_term(&rho, &cfg).unwrap();
        assert!(term.trace().norm() < 1e-11);
        assert!(term.hermiticity_residual() < 1e-11);
    }

    #[test]
    fn covariant_under_subsystem_unitaries() {
        let mut seed = 2.3;
        let rho = random_density(vec![2, 2], &mut seed);
        let cfg = DisentanglementConfig::per_spin(10.0, 2).unwrap();

        let u = random_unitary2(&mut seed).kron(&random_unitary2(&mut seed));
        let rotated = DensityMatrix::new_unchecked(
            &(&u * rho.matrix()) * &u.conjugate_transpose(),
            vec![2, 2],
        );
        let term = disentanglement_term(&rho, &cfg).unwrap();
        let term_rot = disentanglement_term(&rotated, &cfg).unwrap();
        let expected = &(&u * &term) * &u.conjugate_transpose();
        assert!(
            term_rot.max_abs_diff(&expected) < 1e-9,
            "covariance residual {}",
            term_rot.max_abs_diff(&expected)
        );
    }

    #[test]
    fn contracts_mutual_information_flow_direction() {
        // the term must point toward the product of marginals: for a
        // classically correlated diagonal state the correlated populations
        // must decrease
        let m = ComplexMatrix::from_real_rows(
            4,
            &[
                0.3, 0.0, 0.0, 0.0, //
                0.0, 0.2, 0.0, 0.0, //
                0.0, 0.0, 0.2, 0.0, //
                0.0, 0.0, 0.0, 0.3,
            ],
        );
        let rho = DensityMatrix::new(m, vec![2, 2]).unwrap();
        let cfg = DisentanglementConfig::per_spin(1.0, 2).unwrap();
        let term = disentanglement_term(&rho, &cfg).unwrap();
        // d p00/dt < 0 (0.3 > marginal product 0.25), d p01/dt > 0
        assert!(term[(0, 0)].re < 0.0);
        assert!(term[(1, 1)].re > 0.0);
    }

    #[test]
    fn partition_mismatch_is_an_error() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]);
        let cfg = DisentanglementConfig::new(1.0, vec![4]).unwrap();
        assert!(disentanglement_term(&rho, &cfg).is_err());
    }
}
