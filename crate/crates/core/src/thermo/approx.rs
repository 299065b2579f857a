//! Low-temperature expansions of the measured and thermal entropies.

use crate::error::Result;
use crate::scalar::Real;
use crate::thermo::context::ThermalContext;
use crate::thermo::work::{WorkMethod, WorkResult};

/// Approximations valid for `n_bar << 1` and `r << beta_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowTApprox<T: Real = f64> {
    /// `1 - 2 n_bar / (a + 1/2)`.
    pub mu1_approx: T,
    /// `n_bar/(a+1/2) [ln 2 - ln(2 n_bar) + ln(a + 1/2)] - 2 n_bar/(a+1/2)`.
    pub s_meas_log_form: T,
    /// `2 n_bar beta_a / (1 + cosh 2r)`.
    pub s_meas_approx: T,
    /// `n_bar beta_a`.
    pub s_ther_approx: T,
}

/// Evaluates the approximation chain in scalar type `T`, with
/// `a = (n_bar + 1/2) cosh 2r`. Logs a warning below `beta_a = 10`.
pub fn low_t_approximations<T: Real>(ctx: &ThermalContext, r: f64) -> LowTApprox<T> {
    if ctx.is_zero_temperature() {
        return LowTApprox {
            mu1_approx: T::one(),
            s_meas_log_form: T::zero(),
            s_meas_approx: T::zero(),
            s_ther_approx: T::zero(),
        };
    }
    if ctx.beta_a() < 10.0 {
        log::warn!("low-temperature expansion used at beta_a = {}", ctx.beta_a());
    }
    let n = T::from_f64(ctx.n_bar());
    let beta = T::from_f64(ctx.beta_a());
    let cosh2r = T::from_f64(2.0 * r).cosh();
    let a_half = (n.clone() + T::half()) * cosh2r.clone() + T::half();
    let ratio = n.clone() / a_half.clone();
    let two = T::from_f64(2.0);
    let ln2 = two.ln();
    let bracket = ln2 - (two.clone() * n.clone()).ln() + a_half.ln();
    LowTApprox {
        mu1_approx: T::one() - two.clone() * ratio.clone(),
        s_meas_log_form: ratio.clone() * bracket - two.clone() * ratio,
        s_meas_approx: two * n.clone() * beta.clone() / (T::one() + cosh2r),
        s_ther_approx: n * beta,
    }
}

/// Work from the logarithmic measured-entropy form and `S_ther = n_bar beta_a`.
pub fn extracted_work_low_t(ctx: &ThermalContext, r: f64) -> Result<WorkResult> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(crate::error::invalid("r", "squeezing must be finite and non-negative"));
    }
    if ctx.is_zero_temperature() {
        return Ok(WorkResult::zero(WorkMethod::LowTApprox));
    }
    let approx = low_t_approximations::<f64>(ctx, r);
    Ok(WorkResult {
        w_over_hw: (approx.s_ther_approx - approx.s_meas_log_form) / ctx.beta_a(),
        s_meas: approx.s_meas_log_form,
        s_ther: approx.s_ther_approx,
        method: WorkMethod::LowTApprox,
    })
}
