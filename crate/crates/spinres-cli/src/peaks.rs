//! Peak-point frequency-shift curves over the two drive powers.

use spinres::rapid::peak_point;

use crate::calibrate::{calibrate, CalibrationMap};
use crate::emit::{Table, Value};
use crate::CliError;

/// f_dPP(P_T, P_L) = δ_pp/(2πT2) with (W, α) from the calibration and
/// δ_pp from the peak-point closed form. Rows with α ≤ 0 (excessive
/// longitudinal power) are flagged, not fatal.
pub fn peak_curves(
    p_t_mw: &[f64],
    p_l_mw: &[f64],
    cal: &CalibrationMap,
    d_param: f64,
) -> Result<Table, CliError> {
    cal.validate()?;
    if d_param <= 0.0 {
        return Err(CliError::Model("peak curves require D > 0".into()));
    }
    let mut t = Table::new(&["p_t_mw", "p_l_mw", "w", "alpha", "f_dpp_hz", "status"]);
    t.meta("d_param", d_param);
    t.meta("t2", cal.t2);
    for &p_l in p_l_mw {
        for &p_t in p_t_mw {
            let (w, wa2t22) = calibrate(p_t, p_l, cal)?;
            let alpha = 1.0 - wa2t22;
            match peak_point(alpha, d_param, w) {
                Some(pp) => t.push(vec![
                    Value::F(p_t),
                    Value::F(p_l),
                    Value::F(w),
                    Value::F(alpha),
                    Value::F(cal.hz_of_delta(pp.delta)),
                    Value::S("ok".into()),
                ]),
                None => t.push(vec![
                    Value::F(p_t),
                    Value::F(p_l),
                    Value::F(w),
                    Value::F(alpha),
                    Value::Empty,
                    Value::S("above-parametric-threshold".into()),
                ]),
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_drive_intercept() {
        let cal = CalibrationMap::reference(0.5);
        let t = peak_curves(&[0.0], &[0.0], &cal, 0.8).unwrap();
        match &t.rows[0][4] {
            Value::F(f) => {
                let expect = 4.0 * 0.8f64.sqrt() / (2.0 * std::f64::consts::PI * 0.5);
                assert!((f - expect).abs() < 1e-12);
            }
            other => panic!("expected frequency, got {other:?}"),
        }
    }

    #[test]
    fn monotone_decreasing_in_both_powers() {
        let cal = CalibrationMap::reference(0.5);
        let p_t: Vec<f64> = (0..20).map(|k| 2.0 * k as f64).collect();
        let p_l = [0.0, 320.0, 560.0];
        let t = peak_curves(&p_t, &p_l, &cal, 0.8).unwrap();
        // within each P_L block, f_dpp decreases with P_T
        for block in t.rows.chunks(p_t.len()) {
            let f: Vec<f64> = block
                .iter()
                .map(|r| match r[4] {
                    Value::F(x) => x,
                    _ => panic!("missing value"),
                })
                .collect();
            assert!(f.windows(2).all(|w| w[1] < w[0] + 1e-12));
        }
        // and across P_L at fixed P_T (compare first row of each block)
        let heads: Vec<f64> = t.rows.chunks(p_t.len()).map(|b| match b[1][4] {
            Value::F(x) => x,
            _ => f64::NAN,
        }).collect();
        assert!(heads.windows(2).all(|w| w[1] < w[0] + 1e-12));
    }

    #[test]
    fn excessive_longitudinal_power_is_flagged() {
        let cal = CalibrationMap::reference(0.5);
        let t = peak_curves(&[10.0], &[980.0, 1200.0], &cal, 0.8).unwrap();
        assert!(matches!(&t.rows[0][5], Value::S(s) if s != "ok"));
        assert!(matches!(&t.rows[1][5], Value::S(s) if s != "ok"));
        assert_eq!(t.rows[1][4], Value::Empty);
    }
}
