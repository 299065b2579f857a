//! Covariance-matrix algebra for one- and two-mode Gaussian states.
//!
//! Conventions: `hbar = 1`, vacuum quadrature variance `1/2`, two-mode
//! ordering `(x_a, p_a, x_b, p_b)`, entropies in nats. Displacements are not
//! tracked; they affect neither purity nor entropy.

mod covariance;
mod entropy;
mod measurement;
mod negativity;
mod symplectic;

pub(crate) use covariance::det2;
pub use covariance::{
    build_symmetric_state, build_tms_thermal, symplectic_form, validate_physicality, Mat2, Mat4, PhysicalityReport,
    SingleModeCovariance, StandardFormParams, TwoModeCovariance, PHYSICALITY_TOL,
};
pub use entropy::{purity, von_neumann_entropy, Covariance, PURITY_CLAMP};
pub use measurement::{conditional_state_after_b_measurement, measurement_covariance, GaussianMeasurement};
pub use negativity::{log_negativity, partial_transpose, symplectic_eigenvalues};
pub use symplectic::{
    apply_local_symplectic, conditional_determinant_invariant_form, symplectic_invariants, Symplectic2,
    SymplecticInvariants,
};
