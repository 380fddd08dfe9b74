//! Real-coefficient cubic (and degenerate quadratic/linear) root finding.
//!
//! Three-real-root cases go through the trigonometric method, single-real
//! cases through Cardano; every real root is polished with a few Newton
//! steps on the original polynomial, which keeps near-double roots (onset
//! points) accurate.

use num_complex::Complex64;

/// All roots of a₃x³ + a₂x² + a₁x + a₀ in the complex plane.
///
/// Degenerate leading coefficients fall back to the quadratic/linear
/// formulas and return fewer roots.
pub fn roots_complex(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<Complex64> {
    let scale = a3.abs().max(a2.abs()).max(a1.abs()).max(a0.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    let degenerate = a3.abs() < 1e-14 * scale;
    if degenerate {
        return quadratic_complex(a2, a1, a0);
    }
    let b = a2 / a3;
    let c = a1 / a3;
    let d = a0 / a3;
    // depressed cubic t^3 + p t + q, x = t − b/3
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let disc = -4.0 * p * p * p - 27.0 * q * q;

    // a cusp (triple root) leaves p and q at rounding level; the generic
    // branches lose ~cbrt(eps) accuracy there, so resolve it explicitly
    let root_scale = shift
        .abs()
        .max(p.abs().sqrt())
        .max(q.abs().cbrt());
    if p.abs() <= 1e-9 * root_scale * root_scale
        && q.abs() <= 1e-9 * root_scale * root_scale * root_scale
    {
        let triple = Complex64::new(shift, 0.0);
        return vec![triple, triple, triple];
    }

    let mut roots: Vec<Complex64> = Vec::with_capacity(3);
    if disc >= 0.0 && p < 0.0 {
        // three real roots
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos();
        for k in 0..3 {
            let t = m * ((theta - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos();
            roots.push(Complex64::new(t + shift, 0.0));
        }
    } else {
        // one real root by Cardano
        let t0 = if p.abs() < 1e-300 {
            -q.cbrt()
        } else {
            let half_q = q / 2.0;
            let inner = half_q * half_q + p * p * p / 27.0;
            if inner >= 0.0 {
                let s = inner.sqrt();
                (-half_q + s).cbrt() + (-half_q - s).cbrt()
            } else {
                // numerically disc ~ 0; use the trig branch anyway
                let m = 2.0 * (-p / 3.0).sqrt();
                let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
                m * (arg.acos() / 3.0).cos()
            }
        };
        let x0 = t0 + shift;
        // deflate: a3 x^3 + ... = a3 (x − x0)(x^2 + e x + f)
        let e = b + x0;
        let f = c + x0 * e;
        roots.push(Complex64::new(x0, 0.0));
        roots.extend(quadratic_complex(1.0, e, f));
    }
    roots
}

fn quadratic_complex(a: f64, b: f64, c: f64) -> Vec<Complex64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() < 1e-14 * scale {
        if b.abs() < 1e-14 * scale {
            return Vec::new();
        }
        return vec![Complex64::new(-c / b, 0.0)];
    }
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        // stable form avoiding cancellation
        let sq = disc.sqrt();
        let q = -0.5 * (b + b.signum() * sq);
        let r1 = if q != 0.0 { c / q } else { 0.0 };
        let r2 = if a != 0.0 { q / a } else { r1 };
        vec![Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a);
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Real roots of the cubic, ascending, Newton-polished.
pub fn real_roots(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    let poly = |x: f64| ((a3 * x + a2) * x + a1) * x + a0;
    let dpoly = |x: f64| (3.0 * a3 * x + 2.0 * a2) * x + a1;
    let scale = a3.abs().max(a2.abs()).max(a1.abs()).max(a0.abs()).max(1.0);
    let mut out: Vec<f64> = roots_complex(a3, a2, a1, a0)
        .into_iter()
        // perturbed double roots acquire O(√eps) imaginary parts; keep them
        .filter(|z| z.im.abs() <= 3e-8 * (1.0 + z.re.abs()))
        .map(|z| {
            let mut x = z.re;
            for _ in 0..4 {
                let d = dpoly(x);
                if d.abs() > 1e-300 {
                    let step = poly(x) / d;
                    if step.is_finite() {
                        x -= step;
                    }
                }
            }
            x
        })
        .filter(|x| poly(*x).abs() <= 1e-7 * scale * (1.0 + x.abs().powi(3)))
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Eigenvalues of a real 3×3 matrix via its characteristic polynomial.
pub fn eig3_real(m: &[[f64; 3]; 3]) -> Vec<Complex64> {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    // λ³ − tr λ² + m2 λ − det
    roots_complex(1.0, -tr, m2, -det)
}

/// Discriminant of a₃x³ + a₂x² + a₁x + a₀ (positive ⇔ three distinct real
/// roots).
pub fn discriminant(a3: f64, a2: f64, a1: f64, a0: f64) -> f64 {
    18.0 * a3 * a2 * a1 * a0 - 4.0 * a2 * a2 * a2 * a0 + a2 * a2 * a1 * a1
        - 4.0 * a3 * a1 * a1 * a1
        - 27.0 * a3 * a3 * a0 * a0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_known_roots() {
        // (x−1)(x−2)(x−3) = x³ −6x² +11x −6
        let r = real_roots(1.0, -6.0, 11.0, -6.0);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn single_real_root_with_complex_pair() {
        // (x−2)(x²+x+1): roots 2, (−1±i√3)/2
        let r = roots_complex(1.0, -1.0, -1.0, -2.0);
        assert_eq!(r.len(), 3);
        let real: Vec<_> = r.iter().filter(|z| z.im.abs() < 1e-10).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re - 2.0).abs() < 1e-10);
        let rr = real_roots(1.0, -1.0, -1.0, -2.0);
        assert_eq!(rr.len(), 1);
    }

    #[test]
    fn double_root_is_polished() {
        // (x−1)²(x−4) = x³ −6x² +9x −4
        let r = real_roots(1.0, -6.0, 9.0, -4.0);
        assert_eq!(r.len(), 3);
        assert!((r[0] - 1.0).abs() < 1e-7);
        assert!((r[1] - 1.0).abs() < 1e-7);
        assert!((r[2] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn degenerate_falls_back_to_quadratic() {
        let r = real_roots(0.0, 1.0, -3.0, 2.0);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
        let r = real_roots(0.0, 0.0, 2.0, -4.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eig3_of_triangular() {
        let m = [[2.0, 1.0, 0.0], [0.0, -1.0, 3.0], [0.0, 0.0, 0.5]];
        let mut vals: Vec<f64> = eig3_real(&m).iter().map(|z| z.re).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] + 1.0).abs() < 1e-10);
        assert!((vals[1] - 0.5).abs() < 1e-10);
        assert!((vals[2] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn discriminant_sign_matches_root_count() {
        assert!(discriminant(1.0, -6.0, 11.0, -6.0) > 0.0);
        assert!(discriminant(1.0, -1.0, -1.0, -2.0) < 0.0);
    }
}
