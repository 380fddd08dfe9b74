use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::{Error, Result};

/// Largest spin count the dense representation supports (dim = 2^6 = 64).
pub const MAX_SPINS: usize = 6;

/// Per-spin Pauli embeddings S_{l,±}, S_{l,z}.
#[derive(Debug, Clone)]
pub struct PerSpinOps {
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
    pub z: ComplexMatrix,
}

/// Collective and per-spin operators for L spins 1/2, units of ħ/2:
/// single-spin S_z eigenvalues are ±1 and [S_+, S_−] = 4 S_z.
#[derive(Debug, Clone)]
pub struct SpinOperatorSet {
    spins: usize,
    pub s_plus: ComplexMatrix,
    pub s_minus: ComplexMatrix,
    pub s_z: ComplexMatrix,
    pub per_spin: Vec<PerSpinOps>,
}

impl SpinOperatorSet {
    pub fn spins(&self) -> usize {
        self.spins
    }

    pub fn dim(&self) -> usize {
        1 << self.spins
    }

    /// S_x = (S_+ + S_−)/2.
    pub fn s_x(&self) -> ComplexMatrix {
        (&self.s_plus + &self.s_minus).scale_re(0.5)
    }

    /// S_y = (S_+ − S_−)/(2i).
    pub fn s_y(&self) -> ComplexMatrix {
        (&self.s_plus - &self.s_minus).scale(Complex64::new(0.0, -0.5))
    }
}

/// Collective spin operators S = Σ_l S_l built from identity-embedded Paulis.
///
/// Basis ordering: spin 1 is the slowest-varying index, |s₁ s₂ … s_L⟩ with
/// ↑ before ↓.
pub fn collective_spin_ops(spins: usize) -> Result<SpinOperatorSet> {
    if spins < 1 || spins > MAX_SPINS {
        return Err(Error::invalid(format!(
            "spin count {spins} outside supported range 1..={MAX_SPINS}"
        )));
    }
    let i = Complex64::I;
    let one = Complex64::ONE;
    let sigma_plus = ComplexMatrix::from_rows(
        2,
        &[
            Complex64::ZERO,
            2.0 * one,
            Complex64::ZERO,
            Complex64::ZERO,
        ],
    );
    let sigma_minus = sigma_plus.conjugate_transpose();
    let sigma_z = ComplexMatrix::from_rows(2, &[one, Complex64::ZERO, Complex64::ZERO, -one]);
    let _ = i;

    let dim = 1usize << spins;
    let embed = |op: &ComplexMatrix, l: usize| -> ComplexMatrix {
        let left = ComplexMatrix::identity(1 << l);
        let right = ComplexMatrix::identity(1 << (spins - l - 1));
        left.kron(op).kron(&right)
    };

    let mut s_plus = ComplexMatrix::zeros(dim);
    let mut s_minus = ComplexMatrix::zeros(dim);
    let mut s_z = ComplexMatrix::zeros(dim);
    let mut per_spin = Vec::with_capacity(spins);
    for l in 0..spins {
        let p = embed(&sigma_plus, l);
        let m = embed(&sigma_minus, l);
        let z = embed(&sigma_z, l);
        s_plus = &s_plus + &p;
        s_minus = &s_minus + &m;
        s_z = &s_z + &z;
        per_spin.push(PerSpinOps {
            plus: p,
            minus: m,
            z,
        });
    }
    Ok(SpinOperatorSet {
        spins,
        s_plus,
        s_minus,
        s_z,
        per_spin,
    })
}
