//! One line per acceptance criterion. Every criterion is evaluated before
//! anything is asserted, so a failure never hides the lines after it.

use std::process::Command;
use std::time::{Duration, Instant};

use eiwe_cli::validate::{
    check_discrete_comparators, check_heterodyne_fixing, check_invariant_machinery, check_limits, check_low_t_chain,
    check_oracle_equivalence, check_outcome_independence, CheckResult, Grid, Harness,
};
use eiwe_core::gaussian::GaussianMeasurement;
use eiwe_core::thermo::{extracted_work_exact, xi, ThermalContext};
use eiwe_tests::{eiwe_binary, Verdict};

const LAW_BETA: f64 = 100.0;
const LAW_R: [f64; 4] = [0.25, 0.5, 1.0, 2.0];
const LAW_TOL: f64 = 5e-3;
const LAW_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(600);
const VALIDATE_BUDGET: Duration = Duration::from_secs(600);

fn closed_form_law() -> Verdict {
    let t = Instant::now();
    let ctx = ThermalContext::from_beta(LAW_BETA).unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for r in LAW_R {
        let w = extracted_work_exact(&ctx, r, &GaussianMeasurement::heterodyne())
            .unwrap()
            .w_over_hw
            / ctx.n_bar();
        let err = (w - xi(r)).abs() / xi(r);
        ok &= err <= LAW_TOL;
        parts.push(format!("r {r}: {:.3}%", 100.0 * err));
    }
    let elapsed = t.elapsed();
    Verdict {
        id: 1,
        name: "closed-form law".into(),
        passed: ok && elapsed < LAW_BUDGET,
        detail: format!("relative error vs xi(r), limit 0.5%: {}", parts.join(", ")),
        elapsed,
    }
}

fn from_check(c: CheckResult, budget: Option<Duration>) -> Verdict {
    let elapsed = Duration::from_secs_f64(c.seconds);
    let in_time = budget.map_or(true, |b| elapsed < b);
    Verdict {
        id: c.id,
        name: c.name.into(),
        passed: c.passed && in_time,
        detail: c.detail,
        elapsed,
    }
}

fn validate_subcommand() -> Verdict {
    let t = Instant::now();
    let (passed, detail) = match eiwe_binary() {
        None => (false, "eiwe binary not built next to the test executable".to_string()),
        Some(bin) => match Command::new(bin).args(["validate", "--grid", "full"]).output() {
            Ok(out) => {
                let stdout = String::from_utf8_lossy(&out.stdout);
                let lines = stdout
                    .lines()
                    .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
                    .count();
                let code = out.status.code();
                (
                    code == Some(0) && lines == 7,
                    format!("exit code {code:?}, {lines} check lines"),
                )
            }
            Err(e) => (false, format!("cannot run eiwe: {e}")),
        },
    };
    let elapsed = t.elapsed();
    Verdict {
        id: 9,
        name: "validate subcommand".into(),
        passed: passed && elapsed < VALIDATE_BUDGET,
        detail,
        elapsed,
    }
}

#[test]
fn acceptance() {
    let h = Harness::new(Grid::Full);
    let verdicts = vec![
        closed_form_law(),
        from_check(check_oracle_equivalence(&h), Some(ORACLE_BUDGET)),
        from_check(check_outcome_independence(&h), None),
        from_check(check_heterodyne_fixing(&h), None),
        from_check(check_invariant_machinery(&h), None),
        from_check(check_limits(&h), None),
        from_check(check_discrete_comparators(&h), None),
        from_check(check_low_t_chain(&h), None),
        validate_subcommand(),
    ];
    println!();
    for v in &verdicts {
        println!("{}", v.line());
    }
    let failed: Vec<u8> = verdicts.iter().filter(|v| !v.passed).map(|v| v.id).collect();
    println!(
        "{} of {} criteria passed",
        verdicts.len() - failed.len(),
        verdicts.len()
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
