//! Brute-force two-mode Fock-space representation used to cross-check the
//! covariance-matrix pipeline. Nothing here uses Gaussian formulas.

mod build;
mod measure;
mod oracle;
mod state;

pub use build::build_tms_thermal_fock_at;
pub use measure::{coherent_amplitudes, heterodyne_project_b, reduced_entropy, Projection};
pub use oracle::{
    build_tms_thermal_fock, oracle_sample, oracle_work, oracle_work_at, outcome_spread, Cutoff, OracleConfig,
    OracleSample, CUTOFF_STEP, MAX_CUTOFF, MIN_CUTOFF,
};
pub use state::{shannon_of_spectrum, FockState, Mode, SingleModeFock, EIGEN_CLIP, HERMITIAN_TOL, POSITIVITY_TOL};
