use crate::error::{invalid, Result};

/// Bose occupation `1 / (e^beta - 1)` for `beta = hbar omega / (k_B T)`.
pub fn occupation(beta_a: f64) -> Result<f64> {
    if !(beta_a.is_finite() && beta_a > 0.0) {
        return Err(invalid("beta_a", "must be finite and positive"));
    }
    let n = 1.0 / beta_a.exp_m1();
    if !n.is_finite() {
        return Err(invalid("beta_a", format!("{beta_a:e} is too close to zero")));
    }
    Ok(n)
}

/// Temperature of the cavity mode in units of its quantum.
///
/// The zero-temperature context (`n_bar = 0`, `beta_a = +inf`) is allowed so
/// that the `T -> 0` limit can be evaluated; every extracted work is then 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalContext {
    beta_a: f64,
    n_bar: f64,
}

impl ThermalContext {
    pub fn from_beta(beta_a: f64) -> Result<Self> {
        Ok(Self {
            beta_a,
            n_bar: occupation(beta_a)?,
        })
    }

    /// Inverse of [`occupation`]; `n_bar = 0` gives the zero-temperature context.
    pub fn from_occupation(n_bar: f64) -> Result<Self> {
        if !(n_bar.is_finite() && n_bar >= 0.0) {
            return Err(invalid("n_bar", "must be finite and non-negative"));
        }
        let beta_a = if n_bar == 0.0 {
            f64::INFINITY
        } else {
            (1.0 / n_bar).ln_1p()
        };
        Ok(Self { beta_a, n_bar })
    }

    pub fn zero_temperature() -> Self {
        Self {
            beta_a: f64::INFINITY,
            n_bar: 0.0,
        }
    }

    pub fn beta_a(&self) -> f64 {
        self.beta_a
    }

    pub fn n_bar(&self) -> f64 {
        self.n_bar
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.n_bar == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln_two_gives_unit_occupation() {
        assert_relative_eq!(occupation(2f64.ln()).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn deep_low_temperature() {
        let n = occupation(100.0).unwrap();
        assert_relative_eq!(n, (-100f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(n, 3.72e-44, max_relative = 1e-3);
        for beta in [30.0, 45.0, 80.0, 300.0] {
            let n = occupation(beta).unwrap();
            assert!(((n - (-beta).exp()) / n).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_degenerate_temperatures() {
        assert!(occupation(0.0).is_err());
        assert!(occupation(-1.0).is_err());
        assert!(occupation(f64::NAN).is_err());
        assert!(occupation(f64::INFINITY).is_err());
        assert!(occupation(1e-320).is_err());
    }

    #[test]
    fn occupation_round_trip() {
        for n in [1e-6, 0.05, 0.3, 1.0, 40.0] {
            let ctx = ThermalContext::from_occupation(n).unwrap();
            let back = occupation(ctx.beta_a()).unwrap();
            assert!(((back - n) / n).abs() < 1e-14, "{n} -> {back}");
        }
        let zero = ThermalContext::from_occupation(0.0).unwrap();
        assert!(zero.is_zero_temperature() && zero.beta_a().is_infinite());
        assert!(ThermalContext::from_occupation(-0.1).is_err());
    }
}
