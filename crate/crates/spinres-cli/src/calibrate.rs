//! Linear power-to-dimensionless calibration.

use crate::CliError;

/// Calibration of drive powers onto the dimensionless model parameters:
/// W = P_T·w_per_mw, W_A²T2² = P_L·wa2t22_per_mw, plus the T2 used to
/// convert dimensionless detunings to frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationMap {
    /// 1/(37 mW) in the reference calibration.
    pub w_per_mw: f64,
    /// 1/(980 mW) in the reference calibration.
    pub wa2t22_per_mw: f64,
    /// Transverse relaxation time converting δ to f = δ/(2πT2).
    pub t2: f64,
}

impl CalibrationMap {
    pub fn reference(t2: f64) -> Self {
        CalibrationMap {
            w_per_mw: 1.0 / 37.0,
            wa2t22_per_mw: 1.0 / 980.0,
            t2,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.w_per_mw <= 0.0 || self.wa2t22_per_mw <= 0.0 || self.t2 <= 0.0 {
            return Err(CliError::Model(
                "calibration scale factors must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Dimensionless detuning δ for a detuning frequency in Hz.
    pub fn delta_of_hz(&self, f_d: f64) -> f64 {
        2.0 * std::f64::consts::PI * f_d * self.t2
    }

    /// Detuning frequency in Hz for a dimensionless δ.
    pub fn hz_of_delta(&self, delta: f64) -> f64 {
        delta / (2.0 * std::f64::consts::PI * self.t2)
    }
}

/// (W, W_A²T2²) from the two drive powers in mW.
pub fn calibrate(p_t_mw: f64, p_l_mw: f64, cal: &CalibrationMap) -> Result<(f64, f64), CliError> {
    cal.validate()?;
    if p_t_mw < 0.0 || p_l_mw < 0.0 {
        return Err(CliError::Model("drive powers must be nonnegative".into()));
    }
    Ok((p_t_mw * cal.w_per_mw, p_l_mw * cal.wa2t22_per_mw))
}

/// P(mW) = 10^{dBm/10}.
pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}
