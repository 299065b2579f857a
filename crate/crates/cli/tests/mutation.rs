//! A deliberately wrong entropy formula has to be caught by `validate`.

use eiwe_cli::validate::{run_checks, Grid, Harness};
use eiwe_core::gaussian::GaussianMeasurement;
use eiwe_core::thermo::{conditional_purity_in, entropy_thermal_exact, ThermalContext, WorkMethod, WorkResult};

/// Linear entropy `1 - mu` in place of the von Neumann entropy of the conditional state.
fn linear_entropy_work(ctx: &ThermalContext, r: f64, m: &GaussianMeasurement) -> eiwe_core::Result<WorkResult> {
    let s_ther = entropy_thermal_exact(ctx)?;
    let s_meas = 1.0 - conditional_purity_in::<f64>(ctx, r, m)?;
    let w = if ctx.is_zero_temperature() {
        0.0
    } else {
        (s_ther - s_meas) / ctx.beta_a()
    };
    Ok(WorkResult {
        w_over_hw: w,
        s_meas,
        s_ther,
        method: WorkMethod::Exact,
    })
}

#[test]
fn tampered_entropy_fails_validation() {
    let h = Harness {
        work: linear_entropy_work,
        ..Harness::new(Grid::Small)
    };
    let results = run_checks(&h);
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.contains(&2), "{failed:?}");
}

#[test]
fn untampered_run_passes() {
    let results = run_checks(&Harness::new(Grid::Small));
    assert!(results.iter().all(|r| r.passed));
}
