use num_complex::Complex64;

use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix;
use crate::{Error, Result};

/// Validation tolerances for a physical density matrix.
pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-9;
pub const MIN_EIGENVALUE_TOL: f64 = -1e-8;

/// Density operator on a tensor product of subsystems.
///
/// Hermitian, unit trace, positive semidefinite (to the tolerances above);
/// `subsystem_dims` records the tensor factorization, slowest-varying index
/// first.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validating constructor; checks Hermiticity, unit trace, and
    /// positivity.
    pub fn new(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self> {
        let dim: usize = subsystem_dims.iter().product();
        if subsystem_dims.is_empty() || subsystem_dims.iter().any(|&d| d == 0) {
            return Err(Error::invalid("subsystem dims must be positive"));
        }
        if dim != matrix.dim() {
            return Err(Error::invalid(format!(
                "subsystem dims product {dim} does not match matrix dim {}",
                matrix.dim()
            )));
        }
        let herm = matrix.hermiticity_residual();
        if herm > HERMITICITY_TOL {
            return Err(Error::invalid(format!(
                "density matrix not Hermitian (residual {herm:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::invalid(format!(
                "density matrix trace {tr} is not 1"
            )));
        }
        let min = hermitian_eig(&matrix.hermitian_part())?.0[0];
        if min < MIN_EIGENVALUE_TOL {
            return Err(Error::invalid(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix {
            matrix,
            subsystem_dims,
        })
    }

    /// Constructor that skips the invariant checks; for internal hot paths
    /// where the invariants are maintained by construction.
    pub fn new_unchecked(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Self {
        DensityMatrix {
            matrix,
            subsystem_dims,
        }
    }

    /// Pure state |ψ⟩⟨ψ| from an (unnormalized) state vector.
    pub fn pure(state: &[Complex64], subsystem_dims: Vec<usize>) -> Result<Self> {
        let dim = state.len();
        let norm2: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::invalid("zero state vector"));
        }
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = state[i] * state[j].conj() / norm2;
            }
        }
        DensityMatrix::new(m, subsystem_dims)
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(subsystem_dims: Vec<usize>) -> Self {
        let dim: usize = subsystem_dims.iter().product();
        let m = ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64);
        DensityMatrix {
            matrix: m,
            subsystem_dims,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// ⟨op⟩ = Tr(op·ρ); real part (imaginary part is reported for
    /// diagnostics via [`expectation_complex`](Self::expectation_complex)).
    pub fn expectation(&self, op: &ComplexMatrix) -> f64 {
        self.expectation_complex(op).re
    }

    pub fn expectation_complex(&self, op: &ComplexMatrix) -> Complex64 {
        op.trace_product(&self.matrix)
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    /// ρ_A ⊗ ρ_B with concatenated subsystem lists.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.subsystem_dims.clone();
        dims.extend_from_slice(&other.subsystem_dims);
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
            subsystem_dims: dims,
        }
    }
}

/// Kronecker product of two operators (dim = dim(a)·dim(b)).
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Trace out every subsystem not listed in `keep`.
///
/// `keep` holds subsystem indices (0-based, in the order of
/// `subsystem_dims`); it must be a nonempty proper subset. The kept
/// subsystems stay in their original relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.subsystem_dims().len();
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.is_empty() || keep_sorted.len() >= n {
        return Err(Error::invalid(
            "partial_trace: keep must be a nonempty proper subsystem subset",
        ));
    }
    if *keep_sorted.last().unwrap() >= n {
        return Err(Error::invalid("partial_trace: subsystem index out of range"));
    }

    let dims = rho.subsystem_dims().to_vec();
    let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| dims[k]).collect();
    let traced: Vec<usize> = (0..n).filter(|i| !keep_sorted.contains(i)).collect();
    let out_dim: usize = kept_dims.iter().product();

    // strides of each subsystem in the full index (subsystem 0 slowest)
    let mut strides = vec![1usize; n];
    for i in (0..n - 1).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut out_strides = vec![1usize; keep_sorted.len()];
    for i in (0..keep_sorted.len().saturating_sub(1)).rev() {
        out_strides[i] = out_strides[i + 1] * kept_dims[i + 1];
    }

    let mut out = ComplexMatrix::zeros(out_dim);
    // enumerate kept row/col multi-indices and traced diagonal multi-index
    let kept_count: usize = out_dim;
    let traced_count: usize = traced.iter().map(|&i| dims[i]).product();
    for row_k in 0..kept_count {
        for col_k in 0..kept_count {
            let mut acc = Complex64::ZERO;
            for t in 0..traced_count {
                // decompose indices
                let mut row_full = 0usize;
                let mut col_full = 0usize;
                let mut rk = row_k;
                let mut ck = col_k;
                for (pos, &sub) in keep_sorted.iter().enumerate() {
                    let rd = rk / out_strides[pos];
                    let cd = ck / out_strides[pos];
                    rk %= out_strides[pos];
                    ck %= out_strides[pos];
                    row_full += rd * strides[sub];
                    col_full += cd * strides[sub];
                }
                let mut tt = t;
                for &sub in traced.iter() {
                    let block: usize = traced
                        .iter()
                        .filter(|&&s| s > sub)
                        .map(|&s| dims[s])
                        .product();
                    let td = tt / block;
                    tt %= block;
                    row_full += td * strides[sub];
                    col_full += td * strides[sub];
                }
                acc += rho.matrix()[(row_full, col_full)];
            }
            out[(row_k, col_k)] = acc;
        }
    }
    Ok(DensityMatrix::new_unchecked(out, kept_dims))
}

/// All single-subsystem reduced states, in subsystem order.
pub fn reduced_states(rho: &DensityMatrix) -> Result<Vec<DensityMatrix>> {
    (0..rho.subsystem_dims().len())
        .map(|k| partial_trace(rho, &[k]))
        .collect()
}

/// Hermitian matrix logarithm with an eigenvalue floor,
/// `V·diag(ln max(λ, eps))·V†`.
///
/// The floor keeps rank-deficient states (pure initial conditions) finite.
pub fn matrix_log_psd(rho: &DensityMatrix, eps: f64) -> Result<ComplexMatrix> {
    if eps <= 0.0 {
        return Err(Error::invalid("matrix_log_psd: eps must be positive"));
    }
    log_of_hermitian(rho.matrix(), eps)
}

pub(crate) fn log_of_hermitian(m: &ComplexMatrix, eps: f64) -> Result<ComplexMatrix> {
    let (vals, vecs) = hermitian_eig(m)?;
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lam) in vals.iter().enumerate() {
        let ln = lam.max(eps).ln();
        // out += ln * v_k v_k†
        for i in 0..n {
            let vik = vecs[(i, k)];
            if vik == Complex64::ZERO {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += ln * vik * vecs[(j, k)].conj();
            }
        }
    }
    Ok(out.hermitian_part())
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
        // G G† / tr normalizes to a positive unit-trace matrix
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

    #[test]
    fn product_state_partial_trace() {
        let mut seed = 3.7;
        let a = random_density(vec![2], &mut seed);
        let b = random_density(vec![2], &mut seed);
        let ab = a.tensor(&b);
        let ra = partial_trace(&ab, &[0]).unwrap();
        let rb = partial_trace(&ab, &[1]).unwrap();
        assert!(ra.matrix().max_abs_diff(a.matrix()) < 1e-12);
        assert!(rb.matrix().max_abs_diff(b.matrix()) < 1e-12);
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let inv = 1.0 / 2f64.sqrt();
        let bell = DensityMatrix::pure(
            &[c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)],
            vec![2, 2],
        )
        .unwrap();
        for k in [0usize, 1] {
            let r = partial_trace(&bell, &[k]).unwrap();
            let half = ComplexMatrix::identity(2).scale_re(0.5);
            assert!(r.matrix().max_abs_diff(&half) < 1e-12);
        }
    }

    #[test]
    fn partial_trace_matches_double_sum_oracle() {
        // brute-force index-summation oracle for a random two-qubit state
        let mut seed = 11.0;
        let rho = random_density(vec![2, 2], &mut seed);
        let r0 = partial_trace(&rho, &[0]).unwrap();
        let r1 = partial_trace(&rho, &[1]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                // keep subsystem 0: sum over second index
                let mut acc0 = Complex64::ZERO;
                for k in 0..2 {
                    acc0 += rho.matrix()[(i * 2 + k, j * 2 + k)];
                }
                assert!((r0.matrix()[(i, j)] - acc0).norm() < 1e-13);
                // keep subsystem 1: sum over first index
                let mut acc1 = Complex64::ZERO;
                for k in 0..2 {
                    acc1 += rho.matrix()[(k * 2 + i, k * 2 + j)];
                }
                assert!((r1.matrix()[(i, j)] - acc1).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn partial_trace_rejects_bad_subsets() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]);
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[0, 1]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
    }

    #[test]
    fn log_of_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]);
        let l = matrix_log_psd(&rho, 1e-12).unwrap();
        let expect = ComplexMatrix::identity(4).scale_re(-(4f64.ln()));
        assert!(l.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn log_floors_pure_state() {
        let rho = DensityMatrix::pure(&[c(1.0, 0.0), c(0.0, 0.0)], vec![2]).unwrap();
        let l = matrix_log_psd(&rho, 1e-12).unwrap();
        let (vals, _) = hermitian_eig(&l).unwrap();
        assert!((vals[0] - (1e-12f64).ln()).abs() < 1e-9);
        assert!(vals[1].abs() < 1e-12);
    }

    #[test]
    fn exp_log_round_trip_full_rank() {
        let mut seed = 21.0;
        let rho = random_density(vec![2, 2], &mut seed);
        let l = matrix_log_psd(&rho, 1e-12).unwrap();
        // exponential via eigendecomposition of the log
        let (vals, vecs) = hermitian_eig(&l).unwrap();
        let mut exp = ComplexMatrix::zeros(4);
        for (k, &lam) in vals.iter().enumerate() {
            for i in 0..4 {
                for j in 0..4 {
                    exp[(i, j)] += lam.exp() * vecs[(i, k)] * vecs[(j, k)].conj();
                }
            }
        }
        assert!(exp.max_abs_diff(rho.matrix()) < 1e-9);
    }
}
