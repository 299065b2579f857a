use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::gaussian::{
    build_tms_thermal, conditional_state_after_b_measurement, purity, symplectic_invariants, validate_physicality,
    von_neumann_entropy, GaussianMeasurement, TwoModeCovariance,
};
use crate::scalar::{Hp, Real};
use crate::thermo::context::ThermalContext;

/// How a [`WorkResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WorkMethod {
    Exact,
    ClosedForm,
    LowTApprox,
    InvariantForm,
    Oracle,
}

impl WorkMethod {
    pub const ALL: [WorkMethod; 5] = [
        WorkMethod::Exact,
        WorkMethod::ClosedForm,
        WorkMethod::LowTApprox,
        WorkMethod::InvariantForm,
        WorkMethod::Oracle,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            WorkMethod::Exact => "exact",
            WorkMethod::ClosedForm => "closed_form",
            WorkMethod::LowTApprox => "low_t_approx",
            WorkMethod::InvariantForm => "invariant_form",
            WorkMethod::Oracle => "oracle",
        }
    }
}

impl fmt::Display for WorkMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for WorkMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        WorkMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// Work extracted when mode a rethermalizes, in units of `hbar omega_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkResult {
    pub w_over_hw: f64,
    /// Entropy of mode a after the measurement on b (nats).
    pub s_meas: f64,
    /// Entropy of mode a after rethermalization (nats).
    pub s_ther: f64,
    pub method: WorkMethod,
}

impl WorkResult {
    pub(crate) fn zero(method: WorkMethod) -> Self {
        Self {
            w_over_hw: 0.0,
            s_meas: 0.0,
            s_ther: 0.0,
            method,
        }
    }
}

/// Entanglement factor `1 - 2/(1 + cosh 2r)`, rising from 0 towards 1.
pub fn xi(r: f64) -> f64 {
    // algebraically equal to tanh^2 r; this form keeps the small-r end exact
    let t = r.tanh();
    t * t
}

fn check_squeezing(r: f64) -> Result<()> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(invalid("r", "squeezing must be finite and non-negative"));
    }
    Ok(())
}

/// Purity of mode a of the squeezed thermal state after measuring mode b.
pub fn conditional_purity_in<T: Real>(ctx: &ThermalContext, r: f64, meas: &GaussianMeasurement) -> Result<T> {
    check_squeezing(r)?;
    let sigma = build_tms_thermal(T::from_f64(ctx.n_bar()), T::from_f64(r))?;
    let cond = conditional_state_after_b_measurement(&sigma, meas)?;
    purity(&cond)
}

/// Measured-state entropy computed in scalar type `T`.
pub fn entropy_after_measurement_in<T: Real>(ctx: &ThermalContext, r: f64, meas: &GaussianMeasurement) -> Result<T> {
    von_neumann_entropy(conditional_purity_in::<T>(ctx, r, meas)?)
}

/// Rethermalized entropy computed in scalar type `T`, from `mu = 1/(1 + 2 n_bar)`.
pub fn entropy_thermal_in<T: Real>(ctx: &ThermalContext) -> Result<T> {
    let n = T::from_f64(ctx.n_bar());
    let mu = T::one() / (T::one() + n.clone() + n);
    von_neumann_entropy(mu)
}

/// Entropy of mode a after the measurement on b: backaction update, purity, entropy.
pub fn entropy_after_measurement_exact(ctx: &ThermalContext, r: f64, meas: &GaussianMeasurement) -> Result<f64> {
    Ok(entropy_after_measurement_in::<Hp>(ctx, r, meas)?.to_f64())
}

/// Entropy of the thermal state with occupation `n_bar`.
pub fn entropy_thermal_exact(ctx: &ThermalContext) -> Result<f64> {
    Ok(entropy_thermal_in::<Hp>(ctx)?.to_f64())
}

fn work_from_entropies<T: Real>(s_ther: T, s_meas: T, ctx: &ThermalContext, method: WorkMethod) -> WorkResult {
    let w = (s_ther.clone() - s_meas.clone()) / T::from_f64(ctx.beta_a());
    WorkResult {
        w_over_hw: w.to_f64(),
        s_meas: s_meas.to_f64(),
        s_ther: s_ther.to_f64(),
        method,
    }
}

/// `W / (hbar omega_a) = (S_ther - S_meas) / beta_a`, evaluated through the
/// full covariance chain in extended precision.
pub fn extracted_work_exact(ctx: &ThermalContext, r: f64, meas: &GaussianMeasurement) -> Result<WorkResult> {
    check_squeezing(r)?;
    if ctx.is_zero_temperature() {
        return Ok(WorkResult::zero(WorkMethod::Exact));
    }
    let s_meas = entropy_after_measurement_in::<Hp>(ctx, r, meas)?;
    let s_ther = entropy_thermal_in::<Hp>(ctx)?;
    Ok(work_from_entropies(s_ther, s_meas, ctx, WorkMethod::Exact))
}

/// Low-temperature law `W = xi(r) n_bar hbar omega_a`.
///
/// Valid for `r << beta_a`; outside `r <= beta_a / 10` a warning is logged.
/// The reported entropies are the matching leading-order forms
/// `S_meas = 2 n_bar beta / (1 + cosh 2r)` and `S_ther = n_bar beta`.
pub fn extracted_work_closed_form(ctx: &ThermalContext, r: f64) -> Result<WorkResult> {
    check_squeezing(r)?;
    if ctx.is_zero_temperature() {
        return Ok(WorkResult::zero(WorkMethod::ClosedForm));
    }
    let beta = ctx.beta_a();
    if r > beta / 10.0 {
        log::warn!("closed form used outside its regime: r = {r} vs beta_a = {beta}");
    }
    let s_ther = ctx.n_bar() * beta;
    Ok(WorkResult {
        w_over_hw: xi(r) * ctx.n_bar(),
        s_meas: s_ther * (1.0 - xi(r)),
        s_ther,
        method: WorkMethod::ClosedForm,
    })
}

const SYMMETRY_REL_TOL: f64 = 1e-9;
const CONTEXT_REL_TOL: f64 = 1e-6;

fn rel_diff(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

/// Work from the symplectic invariants of an arbitrary member of the
/// symmetric two-mode squeezed thermal class (any local symplectic image of it).
///
/// With `z = Delta / 2` and `a = sqrt(det sigma_a)`, the measured purity is
/// `(a + 1/2) / (2 (z + a/2))`. The context must agree with the state through
/// `(n_bar + 1/2)^2 = z`.
pub fn extracted_work_invariant_form<T: Real>(
    sigma: &TwoModeCovariance<T>,
    ctx: &ThermalContext,
) -> Result<WorkResult> {
    let report = validate_physicality(sigma.matrix())?;
    if !report.physical {
        return Err(Error::Unphysical {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    let det_a = crate::gaussian::det2(&sigma.block_a());
    let det_b = crate::gaussian::det2(&sigma.block_b());
    if rel_diff(det_a.to_f64(), det_b.to_f64()) > SYMMETRY_REL_TOL {
        return Err(Error::UnsupportedState(format!(
            "local determinants differ ({:e} vs {:e}); only symmetric states are supported",
            det_a.to_f64(),
            det_b.to_f64()
        )));
    }
    let inv = symplectic_invariants(sigma);
    let z = inv.delta.clone() * T::half();
    if rel_diff(inv.det_sigma.to_f64(), (z.clone() * z.clone()).to_f64()) > SYMMETRY_REL_TOL {
        return Err(Error::UnsupportedState(
            "symplectic eigenvalues differ; state is not a squeezed thermal state up to local operations".into(),
        ));
    }
    let v = ctx.n_bar() + 0.5;
    if rel_diff(v * v, z.to_f64()) > CONTEXT_REL_TOL {
        return Err(Error::InconsistentContext(format!(
            "(n_bar + 1/2)^2 = {:e} but Delta/2 = {:e}",
            v * v,
            z.to_f64()
        )));
    }
    if ctx.is_zero_temperature() {
        return Ok(WorkResult::zero(WorkMethod::InvariantForm));
    }
    let a = det_a.sqrt();
    let mu = (a.clone() + T::half()) / ((z + a * T::half()) * T::from_f64(2.0));
    let mu = if mu > T::one() && mu < T::from_f64(1.0 + crate::gaussian::PURITY_CLAMP) {
        T::one()
    } else {
        mu
    };
    let s_meas = von_neumann_entropy(mu)?;
    let s_ther = entropy_thermal_in::<T>(ctx)?;
    Ok(work_from_entropies(s_ther, s_meas, ctx, WorkMethod::InvariantForm))
}
