//! Phase-dependent parametric gain of the form 1 + 2η·cos(2φ + φ₀) + η².
//!
//! Both mean-field models express their gain this way; they differ only in
//! how (η, φ₀) are produced.

/// A π-periodic gain curve g(φ) = 1 + 2η·cos(2φ + φ₀) + η².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGain {
    /// Modulation depth η ∈ [0, 1).
    pub eta: f64,
    /// Phase offset φ₀.
    pub phase: f64,
}

impl PhaseGain {
    pub fn evaluate(&self, phi: f64) -> f64 {
        1.0 + 2.0 * self.eta * (2.0 * phi + self.phase).cos() + self.eta * self.eta
    }

    /// (1 + η)².
    pub fn max(&self) -> f64 {
        (1.0 + self.eta) * (1.0 + self.eta)
    }

    /// (1 − η)².
    pub fn min(&self) -> f64 {
        (1.0 - self.eta) * (1.0 - self.eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extrema_and_period() {
        let g = PhaseGain {
            eta: 0.3,
            phase: 0.7,
        };
        let mut max_seen = f64::MIN;
        let mut min_seen = f64::MAX;
        for k in 0..20000 {
            let phi = k as f64 * 1e-3;
            let v = g.evaluate(phi);
            max_seen = max_seen.max(v);
            min_seen = min_seen.min(v);
            assert!((v - g.evaluate(phi + std::f64::consts::PI)).abs() < 1e-12);
        }
        assert!((max_seen - g.max()).abs() < 1e-6);
        assert!((min_seen - g.min()).abs() < 1e-6);
    }
}
