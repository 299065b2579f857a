//! Work extracted from the environment-induced measurement of a squeezed thermal state.

mod approx;
mod context;
mod discrete;
mod work;

pub use approx::{extracted_work_low_t, low_t_approximations, LowTApprox};
pub use context::{occupation, ThermalContext};
pub use discrete::{dicke_symmetrization_work, discrete_number_state_work, DiscreteCaseParams, OmegaKind};
pub use work::{
    conditional_purity_in, entropy_after_measurement_exact, entropy_after_measurement_in, entropy_thermal_exact,
    entropy_thermal_in, extracted_work_closed_form, extracted_work_exact, extracted_work_invariant_form, xi,
    WorkMethod, WorkResult,
};
