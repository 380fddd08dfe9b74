//! Property tests for the algebraic invariants.

use num_complex::Complex64;
use proptest::prelude::*;
use spinres::hilbert::{
    hermitian_eig, partial_trace, tensor_product, ComplexMatrix, DensityMatrix,
};
use spinres::rapid::{
    bistability_onset, cubic_coefficients, f_polynomial, peak_point, steady_state_z,
    RdDimensionless,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn small_complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| c(re, im))
}

fn matrix2() -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(small_complex(), 4)
        .prop_map(|v| ComplexMatrix::from_rows(2, &v))
}

fn density2() -> impl Strategy<Value = DensityMatrix> {
    proptest::collection::vec(small_complex(), 4).prop_map(|v| {
        let g = ComplexMatrix::from_rows(2, &v);
        let m = &g * &g.conjugate_transpose();
        let tr = m.trace().re + 1e-6;
        let m = &m.scale_re(1.0 / tr) + &ComplexMatrix::identity(2).scale_re(1e-6 / tr / 2.0);
        let tr2 = m.trace().re;
        DensityMatrix::new(m.scale_re(1.0 / tr2), vec![2]).unwrap()
    })
}

fn hermitian4() -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(small_complex(), 16).prop_map(|v| {
        ComplexMatrix::from_rows(4, &v).hermitian_part()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_product_is_associative(a in matrix2(), b in matrix2(), m in matrix2()) {
        let left = tensor_product(&tensor_product(&a, &b), &m);
        let right = tensor_product(&a, &tensor_product(&b, &m));
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn product_state_reconstructs_from_marginals(a in density2(), b in density2()) {
        let ab = a.tensor(&b);
        let ra = partial_trace(&ab, &[0]).unwrap();
        let rb = partial_trace(&ab, &[1]).unwrap();
        let rebuilt = ra.tensor(&rb);
        prop_assert!(rebuilt.matrix().max_abs_diff(ab.matrix()) < 1e-10);
    }

    #[test]
    fn eigenvalue_sum_equals_trace(m in hermitian4()) {
        let (vals, _) = hermitian_eig(&m).unwrap();
        let sum: f64 = vals.iter().sum();
        prop_assert!((sum - m.trace().re).abs() < 1e-10);
    }

    #[test]
    fn eigen_reconstruction_residual(m in hermitian4()) {
        let (vals, vecs) = hermitian_eig(&m).unwrap();
        let mut lam = ComplexMatrix::zeros(4);
        for (i, &v) in vals.iter().enumerate() {
            lam[(i, i)] = c(v, 0.0);
        }
        let rebuilt = &(&vecs * &lam) * &vecs.conjugate_transpose();
        prop_assert!(rebuilt.max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn steady_roots_satisfy_f_and_middle_rule(
        alpha in -0.5..0.999f64,
        delta in -3.0..3.0f64,
        d_param in 0.01..3.0f64,
        w in 0.0..3.0f64,
    ) {
        let dims = RdDimensionless::new(alpha, delta, d_param, w);
        let ss = steady_state_z(&dims).unwrap();
        for r in &ss.physical {
            prop_assert!(f_polynomial(&dims, r.z, delta).abs() < 1e-9);
        }
        let stable = ss.physical.iter().filter(|r| r.stable).count();
        match ss.physical.len() {
            3 => {
                prop_assert!(!ss.physical[1].stable, "middle root must be unstable");
                prop_assert!(stable <= 2);
            }
            n if n >= 1 => prop_assert!(stable <= 2),
            _ => {}
        }
    }

    #[test]
    fn onset_points_bound_w_and_lie_on_the_cubic(
        alpha in 0.05..0.95f64,
        ratio in 1.05..8.0f64,
    ) {
        let d_param = alpha * ratio;
        let pts = bistability_onset(alpha, d_param).unwrap();
        prop_assert_eq!(pts.len(), 2);
        prop_assert!(pts[0].w <= pts[1].w);
        for p in &pts {
            let dims = RdDimensionless::new(alpha, p.delta, d_param, p.w);
            prop_assert!(f_polynomial(&dims, p.z, p.delta).abs() < 1e-8);
        }
    }

    #[test]
    fn peak_point_always_on_branch(
        alpha in 0.05..1.0f64,
        d_param in 0.01..3.0f64,
        w in 0.0..3.0f64,
    ) {
        let pp = peak_point(alpha, d_param, w).unwrap();
        let dims = RdDimensionless::new(alpha, pp.delta, d_param, w);
        prop_assert!(f_polynomial(&dims, pp.z, pp.delta).abs() < 1e-9);
        // the peak is where the effective detuning vanishes
        prop_assert!(dims.detuning_at(pp.z).abs() < 1e-9);
    }

    #[test]
    fn cubic_coefficients_match_f(
        alpha in -0.5..0.999f64,
        delta in -3.0..3.0f64,
        d_param in 0.01..3.0f64,
        w in 0.0..3.0f64,
        z in 0.01..1.0f64,
    ) {
        let dims = RdDimensionless::new(alpha, delta, d_param, w);
        let (a3, a2, a1, a0) = cubic_coefficients(&dims);
        let poly = ((a3 * z + a2) * z + a1) * z + a0;
        prop_assert!((poly - f_polynomial(&dims, z, delta)).abs() < 1e-10);
    }
}
