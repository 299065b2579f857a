use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::fock::build::build_tms_thermal_fock_at;
use crate::fock::measure::heterodyne_project_b;
use crate::fock::state::{FockState, SingleModeFock};
use crate::thermo::{WorkMethod, WorkResult};

pub const MIN_CUTOFF: usize = 4;
pub const MAX_CUTOFF: usize = 80;
/// Increment between successive automatic cutoffs.
pub const CUTOFF_STEP: usize = 8;
const AUTO_START: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    Fixed(usize),
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub cutoff: Cutoff,
    /// Trace deficit accepted by automatic two-mode state construction.
    pub trace_tolerance: f64,
    /// Largest entropy change between cutoffs `n` and `n + 8` accepted by [`oracle_work`].
    pub stability_tolerance: f64,
    pub beta_samples: Vec<Complex64>,
    /// Extra levels per sector used when exponentiating the squeezer;
    /// `None` uses `n_cut + 24`.
    pub padding: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            cutoff: Cutoff::Auto,
            trace_tolerance: 1e-8,
            stability_tolerance: 1e-6,
            beta_samples: vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, -2.0),
            ],
            padding: None,
        }
    }
}

impl OracleConfig {
    pub fn fixed(n_cut: usize) -> Self {
        Self {
            cutoff: Cutoff::Fixed(n_cut),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if let Cutoff::Fixed(n) = self.cutoff {
            if !(MIN_CUTOFF..=MAX_CUTOFF).contains(&n) {
                return Err(invalid("n_cut", format!("must lie in [{MIN_CUTOFF}, {MAX_CUTOFF}]")));
            }
        }
        if !(self.trace_tolerance > 0.0) {
            return Err(invalid("trace_tolerance", "must be positive"));
        }
        if !(self.stability_tolerance > 0.0) {
            return Err(invalid("stability_tolerance", "must be positive"));
        }
        Ok(())
    }

    fn padding_for(&self, n_cut: usize) -> usize {
        self.padding.unwrap_or(n_cut + 24)
    }
}

/// Two-mode squeezed thermal state in the Fock basis. With [`Cutoff::Auto`]
/// the cutoff grows in steps of 8 until the trace deficit is below
/// `trace_tolerance`, up to `n_cut = 80`.
pub fn build_tms_thermal_fock(n_bar: f64, r: f64, cfg: &OracleConfig) -> Result<FockState> {
    cfg.validate()?;
    match cfg.cutoff {
        Cutoff::Fixed(n) => build_tms_thermal_fock_at(n_bar, r, n, cfg.padding_for(n)),
        Cutoff::Auto => {
            let mut n = CUTOFF_STEP;
            loop {
                let st = build_tms_thermal_fock_at(n_bar, r, n, cfg.padding_for(n))?;
                if st.trace_deficit() < cfg.trace_tolerance {
                    return Ok(st);
                }
                if n >= MAX_CUTOFF {
                    return Err(Error::NotConverged {
                        n_cut: n,
                        trace_deficit: st.trace_deficit(),
                    });
                }
                n += CUTOFF_STEP;
            }
        }
    }
}

/// One oracle evaluation at a fixed outcome `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSample {
    pub beta: Complex64,
    pub n_cut: usize,
    /// Trace deficit of the two-mode state at `n_cut`.
    pub trace_deficit: f64,
    pub s_meas: f64,
    pub s_ther: f64,
    pub conditional_mean: [f64; 2],
    pub conditional_covariance: [[f64; 2]; 2],
    pub min_eigenvalue: f64,
    pub husimi_q: f64,
}

fn sample_at(n_bar: f64, r: f64, beta: Complex64, n_cut: usize, cfg: &OracleConfig) -> Result<OracleSample> {
    let st = build_tms_thermal_fock_at(n_bar, r, n_cut, cfg.padding_for(n_cut))?;
    let proj = heterodyne_project_b(&st, beta)?;
    let (mean, cov) = proj.state.moments();
    Ok(OracleSample {
        beta,
        n_cut,
        trace_deficit: st.trace_deficit(),
        s_meas: proj.state.entropy(),
        s_ther: SingleModeFock::thermal(n_bar, n_cut)?.entropy(),
        conditional_mean: mean,
        conditional_covariance: cov,
        min_eigenvalue: proj.state.min_eigenvalue(),
        husimi_q: proj.husimi_q,
    })
}

fn max_change(x: &OracleSample, y: &OracleSample) -> f64 {
    let mut d = (x.s_meas - y.s_meas).abs().max((x.s_ther - y.s_ther).abs());
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((x.conditional_covariance[i][j] - y.conditional_covariance[i][j]).abs());
        }
    }
    d
}

/// Conditional entropies and covariance for outcome `beta`. With
/// [`Cutoff::Auto`] the cutoff is raised by 8 until entropies and conditional
/// covariance move by less than `stability_tolerance`.
pub fn oracle_sample(n_bar: f64, r: f64, beta: Complex64, cfg: &OracleConfig) -> Result<OracleSample> {
    cfg.validate()?;
    match cfg.cutoff {
        Cutoff::Fixed(n) => sample_at(n_bar, r, beta, n, cfg),
        Cutoff::Auto => {
            let mut n = AUTO_START.max((4.0 * beta.norm_sqr()).ceil() as usize);
            let mut prev = sample_at(n_bar, r, beta, n, cfg)?;
            loop {
                n += CUTOFF_STEP;
                if n > MAX_CUTOFF {
                    return Err(Error::NotConverged {
                        n_cut: prev.n_cut,
                        trace_deficit: prev.trace_deficit,
                    });
                }
                let next = sample_at(n_bar, r, beta, n, cfg)?;
                if max_change(&prev, &next) < cfg.stability_tolerance {
                    return Ok(next);
                }
                prev = next;
            }
        }
    }
}

fn work_from_sample(n_bar: f64, s: &OracleSample) -> WorkResult {
    let w = if n_bar == 0.0 {
        0.0
    } else {
        (s.s_ther - s.s_meas) / (1.0 / n_bar).ln_1p()
    };
    WorkResult {
        w_over_hw: w,
        s_meas: s.s_meas,
        s_ther: s.s_ther,
        method: WorkMethod::Oracle,
    }
}

/// Work for outcome `beta`.
pub fn oracle_work_at(n_bar: f64, r: f64, beta: Complex64, cfg: &OracleConfig) -> Result<WorkResult> {
    Ok(work_from_sample(n_bar, &oracle_sample(n_bar, r, beta, cfg)?))
}

/// `W / (hbar omega_a) = (S_ther - S_meas) / beta_a` with `S_meas` from the
/// conditional state for outcome `beta = 0` and `S_ther` from the truncated
/// thermal state.
pub fn oracle_work(n_bar: f64, r: f64, cfg: &OracleConfig) -> Result<WorkResult> {
    oracle_work_at(n_bar, r, Complex64::new(0.0, 0.0), cfg)
}

/// Largest pairwise conditional-covariance difference across `cfg.beta_samples`.
pub fn outcome_spread(n_bar: f64, r: f64, cfg: &OracleConfig) -> Result<(f64, Vec<OracleSample>)> {
    let samples = cfg
        .beta_samples
        .iter()
        .map(|&b| oracle_sample(n_bar, r, b, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut spread = 0.0_f64;
    for (i, x) in samples.iter().enumerate() {
        for y in &samples[i + 1..] {
            for p in 0..2 {
                for q in 0..2 {
                    spread = spread.max((x.conditional_covariance[p][q] - y.conditional_covariance[p][q]).abs());
                }
            }
        }
    }
    Ok((spread, samples))
}
