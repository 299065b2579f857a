use std::io::{self, Write};

use eiwe_core::fock::{oracle_work, OracleConfig};
use eiwe_core::gaussian::{build_tms_thermal, GaussianMeasurement};
use eiwe_core::thermo::{
    extracted_work_closed_form, extracted_work_exact, extracted_work_invariant_form, extracted_work_low_t, xi,
    ThermalContext, WorkMethod, WorkResult,
};
use eiwe_core::{Hp, Real};
use serde_json::{json, Map, Value};

use crate::config::{OutputFormat, SweepConfig};
use crate::format::{fmt_float, round_sig};

pub const CSV_HEADER: &str = "beta,n_bar,r,lambda,xi,s_ther,s_meas,w_over_hw,method";
pub const CONVENTIONS: &str = "vacuum variance 1/2, entropies in nats";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub beta: f64,
    pub n_bar: f64,
    pub r: f64,
    pub lambda: f64,
    pub xi: f64,
    pub method: WorkMethod,
    pub outcome: Result<WorkResult, String>,
}

impl Row {
    pub fn failed(&self) -> bool {
        self.outcome.is_err()
    }
}

/// Work for one grid point by the requested method.
pub fn evaluate(method: WorkMethod, ctx: &ThermalContext, r: f64, lambda: f64) -> eiwe_core::Result<WorkResult> {
    match method {
        WorkMethod::Exact => extracted_work_exact(ctx, r, &GaussianMeasurement::new(lambda, 0.0)?),
        WorkMethod::ClosedForm => extracted_work_closed_form(ctx, r),
        WorkMethod::LowTApprox => extracted_work_low_t(ctx, r),
        WorkMethod::InvariantForm => {
            let sigma = build_tms_thermal(Hp::from_f64(ctx.n_bar()), Hp::from_f64(r))?;
            extracted_work_invariant_form(&sigma, ctx)
        }
        WorkMethod::Oracle => oracle_work(ctx.n_bar(), r, &OracleConfig::default()),
    }
}

/// Rows in input order: beta outermost, then r, lambda, method.
pub fn compute_rows(cfg: &SweepConfig) -> Vec<Row> {
    let mut rows = Vec::with_capacity(cfg.row_count());
    for &beta in &cfg.beta_values {
        let ctx = ThermalContext::from_beta(beta);
        for &r in &cfg.r_values {
            for &lambda in &cfg.lambda_values {
                for &method in &cfg.methods {
                    let outcome = match &ctx {
                        Ok(ctx) => evaluate(method, ctx, r, lambda).map_err(|e| e.to_string()),
                        Err(e) => Err(e.to_string()),
                    };
                    rows.push(Row {
                        beta,
                        n_bar: ctx.as_ref().map(|c| c.n_bar()).unwrap_or(f64::NAN),
                        r,
                        lambda,
                        xi: xi(r),
                        method,
                        outcome,
                    });
                }
            }
        }
    }
    rows
}

/// Failed rows keep their inputs and carry `failed` in the result columns.
pub fn write_csv<W: Write>(rows: &[Row], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        let (s_ther, s_meas, work) = match &row.outcome {
            Ok(res) => (fmt_float(res.s_ther), fmt_float(res.s_meas), fmt_float(res.w_over_hw)),
            Err(_) => ("failed".into(), "failed".into(), "failed".into()),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            fmt_float(row.beta),
            fmt_float(row.n_bar),
            fmt_float(row.r),
            fmt_float(row.lambda),
            fmt_float(row.xi),
            s_ther,
            s_meas,
            work,
            row.method
        )?;
    }
    Ok(())
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn rows_to_json(rows: &[Row]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut m = Map::new();
            m.insert("beta".into(), num(row.beta));
            m.insert("n_bar".into(), num(row.n_bar));
            m.insert("r".into(), num(row.r));
            m.insert("lambda".into(), num(row.lambda));
            m.insert("xi".into(), num(row.xi));
            match &row.outcome {
                Ok(res) => {
                    m.insert("s_ther".into(), num(res.s_ther));
                    m.insert("s_meas".into(), num(res.s_meas));
                    m.insert("w_over_hw".into(), num(res.w_over_hw));
                }
                Err(e) => {
                    m.insert("status".into(), json!("failed"));
                    m.insert("error".into(), json!(e));
                }
            }
            m.insert("method".into(), json!(row.method.as_str()));
            Value::Object(m)
        })
        .collect();
    json!({
        "metadata": {
            "tool": "eiwe",
            "version": env!("CARGO_PKG_VERSION"),
            "conventions": CONVENTIONS,
        },
        "rows": rows,
    })
}

pub fn write_json<W: Write>(rows: &[Row], mut w: W) -> io::Result<()> {
    let text = serde_json::to_string_pretty(&rows_to_json(rows)).map_err(io::Error::other)?;
    writeln!(w, "{text}")
}

#[derive(Debug)]
pub struct SweepReport {
    pub rows: Vec<Row>,
}

impl SweepReport {
    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.failed())
    }
}

/// Computes every row and writes them to `cfg.output_path` (standard output when unset).
pub fn run_sweep(cfg: &SweepConfig) -> io::Result<SweepReport> {
    let rows = compute_rows(cfg);
    let mut buf = Vec::new();
    match cfg.format {
        OutputFormat::Csv => write_csv(&rows, &mut buf)?,
        OutputFormat::Json => write_json(&rows, &mut buf)?,
    }
    match &cfg.output_path {
        Some(path) => std::fs::write(path, &buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(SweepReport { rows })
}
