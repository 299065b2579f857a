use std::io::{self, Write};

use eiwe_core::gaussian::{build_tms_thermal, log_negativity, GaussianMeasurement};
use eiwe_core::thermo::{extracted_work_exact, xi, ThermalContext};

use crate::format::fmt_float;

/// Relative band within which `W / n_bar` should track `xi(r)`.
pub const LAW_BAND: f64 = 0.02;

#[derive(Debug, Clone, PartialEq)]
pub struct LawRow {
    pub r: f64,
    pub xi: f64,
    pub log_negativity: f64,
    pub w_over_nbar: f64,
    /// `None` at `r = 0`, where both sides vanish.
    pub ratio: Option<f64>,
}

impl LawRow {
    pub fn within_band(&self) -> bool {
        self.ratio.map_or(true, |q| (q - 1.0).abs() <= LAW_BAND)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LawError {
    #[error("beta must be at least 10 for the low-temperature law, got {0}")]
    BetaTooSmall(f64),
    #[error("need at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("r_max must be finite and positive, got {0}")]
    BadRange(f64),
    #[error(transparent)]
    Core(#[from] eiwe_core::Error),
}

pub fn law_table(beta: f64, r_max: f64, steps: usize) -> Result<Vec<LawRow>, LawError> {
    if !(beta >= 10.0) || !beta.is_finite() {
        return Err(LawError::BetaTooSmall(beta));
    }
    if steps < 2 {
        return Err(LawError::TooFewSteps(steps));
    }
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(LawError::BadRange(r_max));
    }
    let ctx = ThermalContext::from_beta(beta)?;
    let het = GaussianMeasurement::heterodyne();
    (0..steps)
        .map(|i| {
            let r = r_max * i as f64 / (steps - 1) as f64;
            let x = xi(r);
            let w = extracted_work_exact(&ctx, r, &het)?.w_over_hw / ctx.n_bar();
            let e_n = log_negativity(&build_tms_thermal(ctx.n_bar(), r)?)?;
            Ok(LawRow {
                r,
                xi: x,
                log_negativity: e_n,
                w_over_nbar: w,
                ratio: (i > 0).then(|| w / x),
            })
        })
        .collect()
}

pub fn write_table<W: Write>(beta: f64, rows: &[LawRow], mut w: W) -> io::Result<()> {
    writeln!(w, "# beta = {}, band = {}", fmt_float(beta), fmt_float(LAW_BAND))?;
    writeln!(
        w,
        "{:>16} {:>16} {:>16} {:>16} {:>16} {:>5}",
        "r", "xi", "E_N", "w/n_bar", "ratio", "band"
    )?;
    for row in rows {
        let ratio = row.ratio.map_or_else(|| "-".to_string(), fmt_float);
        let band = if row.ratio.is_none() {
            "-"
        } else if row.within_band() {
            "ok"
        } else {
            "out"
        };
        writeln!(
            w,
            "{:>16} {:>16} {:>16} {:>16} {:>16} {:>5}",
            fmt_float(row.r),
            fmt_float(row.xi),
            fmt_float(row.log_negativity),
            fmt_float(row.w_over_nbar),
            ratio,
            band
        )?;
    }
    Ok(())
}
