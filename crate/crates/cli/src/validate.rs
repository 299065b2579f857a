use std::f64::consts::TAU;
use std::time::Instant;

use eiwe_core::fock::{oracle_work, outcome_spread, OracleConfig};
use eiwe_core::gaussian::{
    apply_local_symplectic, build_symmetric_state, build_tms_thermal, conditional_determinant_invariant_form,
    conditional_state_after_b_measurement, measurement_covariance, symplectic_invariants, GaussianMeasurement,
    StandardFormParams, Symplectic2,
};
use eiwe_core::thermo::{
    conditional_purity_in, dicke_symmetrization_work, discrete_number_state_work, extracted_work_exact,
    extracted_work_low_t, low_t_approximations, xi, DiscreteCaseParams, OmegaKind, ThermalContext, WorkResult,
};
use eiwe_core::{Hp, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Small,
    Full,
}

/// Gaussian work routine under test; swapped out by the mutation check.
pub type WorkFn = fn(&ThermalContext, f64, &GaussianMeasurement) -> eiwe_core::Result<WorkResult>;

#[derive(Debug, Clone, Copy)]
pub struct Harness {
    pub grid: Grid,
    pub work: WorkFn,
    pub seed: u64,
}

impl Harness {
    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            work: extracted_work_exact,
            seed: 0x5eed_2024,
        }
    }

    fn full(&self) -> bool {
        self.grid == Grid::Full
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> (bool, String)) -> CheckResult {
    let t = Instant::now();
    let (passed, detail) = f();
    CheckResult {
        id,
        name,
        passed,
        detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

fn rel(x: f64, y: f64) -> f64 {
    let s = x.abs().max(y.abs());
    if s == 0.0 {
        0.0
    } else {
        (x - y).abs() / s
    }
}

fn ctx_for(n_bar: f64) -> ThermalContext {
    ThermalContext::from_occupation(n_bar).expect("grid occupations are valid")
}

pub const ORACLE_N_GRID: [f64; 4] = [0.0, 0.05, 0.1, 0.3];
pub const ORACLE_R_GRID: [f64; 4] = [0.0, 0.5, 1.0, 1.5];

fn oracle_grid(h: &Harness) -> Vec<(f64, f64)> {
    if h.full() {
        ORACLE_N_GRID
            .iter()
            .flat_map(|&n| ORACLE_R_GRID.iter().map(move |&r| (n, r)))
            .collect()
    } else {
        vec![(0.0, 0.0), (0.0, 1.0), (0.1, 0.0), (0.1, 1.0)]
    }
}

/// Oracle work vs Gaussian work: `1e-4` relative, or `1e-8` absolute below `1e-6`.
pub fn check_oracle_equivalence(h: &Harness) -> CheckResult {
    timed(2, "oracle equivalence", || {
        let cfg = OracleConfig::default();
        let mut worst = 0.0_f64;
        let mut failures = Vec::new();
        let grid = oracle_grid(h);
        for &(n, r) in &grid {
            let oracle = oracle_work(n, r, &cfg);
            let gauss = (h.work)(&ctx_for(n), r, &GaussianMeasurement::heterodyne());
            match (oracle, gauss) {
                (Ok(o), Ok(g)) => {
                    let (err, ok) = if g.w_over_hw.abs() < 1e-6 {
                        let e = (o.w_over_hw - g.w_over_hw).abs();
                        (e, e <= 1e-8)
                    } else {
                        let e = rel(o.w_over_hw, g.w_over_hw);
                        (e, e <= 1e-4)
                    };
                    worst = worst.max(err);
                    if !ok {
                        failures.push(format!("(n_bar {n}, r {r}): oracle {} vs {}", o.w_over_hw, g.w_over_hw));
                    }
                }
                (o, g) => failures.push(format!("(n_bar {n}, r {r}): {:?} / {:?}", o.err(), g.err())),
            }
        }
        if failures.is_empty() {
            (true, format!("{} points, worst error {worst:.2e}", grid.len()))
        } else {
            (false, failures.join("; "))
        }
    })
}

/// Conditional covariance spread across the configured outcomes `< 1e-6`.
pub fn check_outcome_independence(h: &Harness) -> CheckResult {
    timed(3, "outcome independence", || {
        let cfg = OracleConfig::default();
        let points: Vec<(f64, f64)> = if h.full() { oracle_grid(h) } else { vec![(0.1, 1.0)] };
        let mut worst = 0.0_f64;
        let mut failures = Vec::new();
        for &(n, r) in &points {
            match outcome_spread(n, r, &cfg) {
                Ok((spread, samples)) => {
                    worst = worst.max(spread);
                    let min_eig = samples.iter().map(|s| s.min_eigenvalue).fold(f64::INFINITY, f64::min);
                    if spread >= 1e-6 || min_eig < -1e-10 {
                        failures.push(format!(
                            "(n_bar {n}, r {r}): spread {spread:.2e}, min eigenvalue {min_eig:.2e}"
                        ));
                    }
                }
                Err(e) => failures.push(format!("(n_bar {n}, r {r}): {e}")),
            }
        }
        if failures.is_empty() {
            (
                true,
                format!(
                    "{} states x {} outcomes, worst spread {worst:.2e}",
                    points.len(),
                    cfg.beta_samples.len()
                ),
            )
        } else {
            (false, failures.join("; "))
        }
    })
}

/// `measurement_covariance(1, phi) == diag(1/2, 1/2)` bit for bit.
pub fn check_heterodyne_fixing(h: &Harness) -> CheckResult {
    timed(4, "heterodyne fixing", || {
        let mut rng = ChaCha8Rng::seed_from_u64(h.seed);
        let mut bad = 0;
        for _ in 0..100 {
            let phi = rng.gen_range(0.0..TAU);
            let g = measurement_covariance::<f64>(&GaussianMeasurement::heterodyne_rotated(phi).expect("finite phi"));
            if *g.matrix() != [[0.5, 0.0], [0.0, 0.5]] {
                bad += 1;
            }
        }
        (bad == 0, format!("{bad} of 100 random angles deviate"))
    })
}

fn random_euler(rng: &mut ChaCha8Rng) -> Symplectic2<Hp> {
    Symplectic2::euler(
        rng.gen_range(0.0..TAU),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(0.0..TAU),
    )
}

fn random_symmetric(rng: &mut ChaCha8Rng) -> StandardFormParams {
    let a: f64 = rng.gen_range(0.5..5.0);
    let c = (a - 0.5) * rng.gen_range(0.0..1.0);
    StandardFormParams::symmetric(a, c, -c).expect("a >= 1/2")
}

/// Local-symplectic invariance, invariant-form determinant, and the mixing identity.
pub fn check_invariant_machinery(h: &Harness) -> CheckResult {
    timed(5, "invariant machinery", || {
        let mut rng = ChaCha8Rng::seed_from_u64(h.seed ^ 5);
        let trials = if h.full() { 1000 } else { 100 };
        let mut worst_inv = 0.0_f64;
        for _ in 0..trials {
            let n = rng.gen_range(0.0..2.0);
            let r = rng.gen_range(0.0..2.0);
            let s = build_tms_thermal(Hp::from_f64(n), Hp::from_f64(r)).expect("valid");
            let before = symplectic_invariants(&s);
            let after = symplectic_invariants(&apply_local_symplectic(
                &s,
                &random_euler(&mut rng),
                &random_euler(&mut rng),
            ));
            worst_inv = worst_inv
                .max(rel(before.det_sigma.to_f64(), after.det_sigma.to_f64()))
                .max(rel(before.delta.to_f64(), after.delta.to_f64()));
        }
        let mut worst_det = 0.0_f64;
        let mut worst_mix = 0.0_f64;
        for _ in 0..trials {
            let p = random_symmetric(&mut rng);
            let s = build_symmetric_state(&p).expect("physical by construction");
            let inv = symplectic_invariants(&s);
            let direct = conditional_state_after_b_measurement(&s, &GaussianMeasurement::heterodyne())
                .expect("regular")
                .det();
            let via = conditional_determinant_invariant_form(&inv, p.a).expect("a >= 1/2");
            worst_det = worst_det.max(rel(direct, via));
            worst_mix = worst_mix.max(rel(p.mixing_invariant(), inv.delta));
        }
        let passed = worst_inv < 1e-9 && worst_det < 1e-10 && worst_mix < 1e-13;
        (
            passed,
            format!(
                "{trials} trials each: invariants {worst_inv:.2e}, conditional det {worst_det:.2e}, mixing identity {worst_mix:.2e}"
            ),
        )
    })
}

/// `W(r=0) = 0`, `W(n_bar=0) = 0`, monotone in `r`, `0 <= W <= S_ther / beta`.
pub fn check_limits(h: &Harness) -> CheckResult {
    timed(6, "limits", || {
        let het = GaussianMeasurement::heterodyne();
        let mut issues = Vec::new();
        let betas: &[f64] = if h.full() {
            &[0.3, 1.0, 3.0, 10.0, 30.0, 60.0, 100.0]
        } else {
            &[1.0, 50.0]
        };
        let steps = if h.full() { 60 } else { 12 };
        let mut points = 0;
        for &beta in betas {
            let ctx = ThermalContext::from_beta(beta).expect("positive beta");
            let mut prev = 0.0;
            for i in 0..=steps {
                let r = 3.0 * i as f64 / steps as f64;
                points += 1;
                match (h.work)(&ctx, r, &het) {
                    Ok(w) => {
                        let wv = w.w_over_hw;
                        if i == 0 && wv != 0.0 {
                            issues.push(format!("beta {beta}: W(r=0) = {wv:e}"));
                        }
                        if wv < prev {
                            issues.push(format!("beta {beta}: W decreases at r = {r}"));
                        }
                        if wv < 0.0 || wv > w.s_ther / beta * (1.0 + 1e-12) {
                            issues.push(format!("beta {beta}, r {r}: W = {wv:e} outside [0, S_ther/beta]"));
                        }
                        prev = wv;
                    }
                    Err(e) => issues.push(format!("beta {beta}, r {r}: {e}")),
                }
            }
        }
        for r in [0.0, 0.5, 2.0] {
            match (h.work)(&ThermalContext::zero_temperature(), r, &het) {
                Ok(w) if w.w_over_hw == 0.0 => {}
                other => issues.push(format!("n_bar = 0, r {r}: {other:?}")),
            }
        }
        if issues.is_empty() {
            (true, format!("{points} points"))
        } else {
            issues.truncate(5);
            (false, issues.join("; "))
        }
    })
}

/// Number-state and Dicke comparators equal the fully entangled Gaussian value.
pub fn check_discrete_comparators(_h: &Harness) -> CheckResult {
    timed(7, "discrete comparators", || {
        let mut worst = 0.0_f64;
        let mut issues = Vec::new();
        for beta in [0.5, 1.0, 2.0, 5.0, 10.0, 30.0] {
            let cav = DiscreteCaseParams::from_beta(beta, OmegaKind::Cavity, 1).expect("beta > 0");
            let x = cav.x();
            let w_num = discrete_number_state_work(&cav).expect("cavity case");
            // xi saturates to exactly 1 in f64 well before r = 20
            let w_max = xi(20.0) * x;
            let dicke = DiscreteCaseParams::from_beta(beta, OmegaKind::LevelSpacing, 50).expect("beta > 0");
            let w_dicke = dicke_symmetrization_work(&dicke).expect("level case");
            worst = worst.max((w_num - x).abs()).max((w_num - w_max).abs());
            if (w_num - x).abs() > 1e-12 || (w_num - w_max).abs() > 1e-12 {
                issues.push(format!("beta {beta}: {w_num} vs x {x}, xi=1 value {w_max}"));
            }
            if w_dicke != w_num {
                issues.push(format!("beta {beta}: Dicke {w_dicke} vs {w_num}"));
            }
        }
        if issues.is_empty() {
            (true, format!("6 temperatures, worst difference {worst:.2e}"))
        } else {
            (false, issues.join("; "))
        }
    })
}

/// Every low-temperature approximation gets closer to its exact counterpart as
/// `beta` runs through 10, 20, 50, 100 at `r = 1`.
pub fn check_low_t_chain(h: &Harness) -> CheckResult {
    timed(8, "low-temperature chain", || {
        let r = 1.0;
        let het = GaussianMeasurement::heterodyne();
        let names = ["mu1", "S_meas log form", "S_meas leading", "S_ther leading", "W low-T"];
        let mut errors: Vec<[f64; 5]> = Vec::new();
        for beta in [10.0, 20.0, 50.0, 100.0] {
            let ctx = ThermalContext::from_beta(beta).expect("positive beta");
            let exact = match (h.work)(&ctx, r, &het) {
                Ok(w) => w,
                Err(e) => return (false, format!("beta {beta}: {e}")),
            };
            let approx = low_t_approximations::<Hp>(&ctx, r);
            let mu = conditional_purity_in::<Hp>(&ctx, r, &het).expect("valid");
            let mu_err = ((approx.mu1_approx.clone() - mu.clone()) / mu).abs().to_f64();
            let low_w = extracted_work_low_t(&ctx, r).expect("valid").w_over_hw;
            errors.push([
                mu_err,
                rel(approx.s_meas_log_form.to_f64(), exact.s_meas),
                rel(approx.s_meas_approx.to_f64(), exact.s_meas),
                rel(approx.s_ther_approx.to_f64(), exact.s_ther),
                rel(low_w, exact.w_over_hw),
            ]);
        }
        let mut issues = Vec::new();
        for (k, name) in names.iter().enumerate() {
            if !errors.windows(2).all(|w| w[1][k] < w[0][k]) {
                let seq: Vec<String> = errors.iter().map(|e| format!("{:.2e}", e[k])).collect();
                issues.push(format!("{name} not decreasing: {}", seq.join(", ")));
            }
        }
        if issues.is_empty() {
            let last = errors.last().expect("four temperatures");
            (
                true,
                format!(
                    "errors at beta 100: {}",
                    names
                        .iter()
                        .zip(last)
                        .map(|(n, e)| format!("{n} {e:.2e}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            )
        } else {
            (false, issues.join("; "))
        }
    })
}

pub fn run_checks(h: &Harness) -> Vec<CheckResult> {
    vec![
        check_oracle_equivalence(h),
        check_outcome_independence(h),
        check_heterodyne_fixing(h),
        check_invariant_machinery(h),
        check_limits(h),
        check_discrete_comparators(h),
        check_low_t_chain(h),
    ]
}

pub fn summary_json(h: &Harness, results: &[CheckResult]) -> serde_json::Value {
    json!({
        "tool": "eiwe",
        "version": env!("CARGO_PKG_VERSION"),
        "grid": h.grid,
        "passed": results.iter().all(|r| r.passed),
        "checks": results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let h = Harness::new(Grid::Small);
        for r in run_checks(&h) {
            assert!(r.passed, "{}", r.line());
        }
    }

    fn off_by_a_percent(ctx: &ThermalContext, r: f64, m: &GaussianMeasurement) -> eiwe_core::Result<WorkResult> {
        let mut w = extracted_work_exact(ctx, r, m)?;
        w.w_over_hw *= 1.01;
        Ok(w)
    }

    #[test]
    fn perturbed_work_is_caught() {
        let h = Harness {
            work: off_by_a_percent,
            ..Harness::new(Grid::Small)
        };
        assert!(!check_oracle_equivalence(&h).passed);
    }
}
