use num_complex::Complex64;

use crate::hilbert::ComplexMatrix;
use crate::{Error, Result};

/// Holstein–Primakoff operators on a truncated Fock space:
/// S₊ = 2B†(L − B†B)^{1/2}, S₋ = 2(L − B†B)^{1/2}B, S_z = −L + 2B†B.
#[derive(Debug, Clone)]
pub struct HpOperators {
    pub n_max: usize,
    pub b: ComplexMatrix,
    pub b_dag: ComplexMatrix,
    pub s_plus: ComplexMatrix,
    pub s_minus: ComplexMatrix,
    pub s_z: ComplexMatrix,
}

impl HpOperators {
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Build the HP map for L spins truncated at Fock level `n_max`.
///
/// Requires n_max ≤ L so the operand L − B†B stays positive semidefinite;
/// the square root is spectral calculus on the diagonal number operator.
pub fn hp_map(spins: usize, n_max: usize) -> Result<HpOperators> {
    if spins == 0 {
        return Err(Error::invalid("spin count must be positive"));
    }
    if n_max > spins {
        return Err(Error::invalid(format!(
            "Fock truncation n_max = {n_max} exceeds L = {spins}: L − B†B must \
             stay positive semidefinite"
        )));
    }
    let dim = n_max + 1;
    let l = spins as f64;

    let mut b = ComplexMatrix::zeros(dim);
    for n in 1..dim {
        b[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let b_dag = b.conjugate_transpose();

    // √(L − n) on the Fock diagonal
    let mut root = ComplexMatrix::zeros(dim);
    for n in 0..dim {
        root[(n, n)] = Complex64::new((l - n as f64).sqrt(), 0.0);
    }

    let s_plus = (&b_dag * &root).scale_re(2.0);
    let s_minus = (&root * &b).scale_re(2.0);
    let mut s_z = ComplexMatrix::zeros(dim);
    for n in 0..dim {
        s_z[(n, n)] = Complex64::new(-l + 2.0 * n as f64, 0.0);
    }

    Ok(HpOperators {
        n_max,
        b,
        b_dag,
        s_plus,
        s_minus,
        s_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_z_ladder_eigenvalues() {
        let hp = hp_map(3, 3).unwrap();
        for n in 0..4 {
            assert!((hp.s_z[(n, n)].re - (-3.0 + 2.0 * n as f64)).abs() < 1e-14);
        }
    }

    #[test]
    fn vacuum_is_annihilated() {
        let hp = hp_map(4, 3).unwrap();
        // S₋|0⟩ = 0: first column vanishes
        for i in 0..hp.dim() {
            assert!(hp.s_minus[(i, 0)].norm() < 1e-15);
        }
    }

    #[test]
    fn boson_commutator_up_to_truncation() {
        let hp = hp_map(5, 4).unwrap();
        let c = hp.b.commutator(&hp.b_dag);
        for i in 0..hp.dim() - 1 {
            assert!((c[(i, i)] - Complex64::ONE).norm() < 1e-13);
        }
        // last level carries the truncation defect
        assert!((c[(hp.dim() - 1, hp.dim() - 1)].re + hp.dim() as f64 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_commutator_on_interior_levels() {
        // [S₊, S₋] = 4S_z entrywise away from the truncation boundary
        let hp = hp_map(6, 4).unwrap();
        let c = hp.s_plus.commutator(&hp.s_minus);
        let want = hp.s_z.scale_re(4.0);
        for i in 0..hp.dim() - 1 {
            for j in 0..hp.dim() - 1 {
                assert!(
                    (c[(i, j)] - want[(i, j)]).norm() < 1e-10,
                    "mismatch at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn untruncated_map_closes_the_algebra_exactly() {
        // n_max = L is the full symmetric sector; the commutator holds on
        // every level including the top
        let hp = hp_map(4, 4).unwrap();
        let c = hp.s_plus.commutator(&hp.s_minus);
        assert!(c.max_abs_diff(&hp.s_z.scale_re(4.0)) < 1e-12);
    }

    #[test]
    fn rejects_overfull_truncation() {
        assert!(hp_map(2, 3).is_err());
    }
}
