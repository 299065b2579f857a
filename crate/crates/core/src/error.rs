use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("matrix is not symmetric (largest asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("unphysical covariance matrix: smallest eigenvalue of sigma + i*Omega/2 is {min_eigenvalue:e}")]
    Unphysical { min_eigenvalue: f64 },

    #[error("matrix is singular (determinant {0:e})")]
    Singular(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("purity {0} outside (0, 1]")]
    PurityOutOfRange(f64),

    #[error("block is not symplectic: determinant {0}")]
    NotSymplectic(f64),

    #[error("unsupported state: {0}")]
    UnsupportedState(String),

    #[error("thermal context inconsistent with state: {0}")]
    InconsistentContext(String),

    #[error("discrete case mismatch: {0}")]
    WrongCase(String),

    #[error("cutoff did not converge: reached n_cut = {n_cut} with trace deficit {trace_deficit:e}")]
    NotConverged { n_cut: usize, trace_deficit: f64 },

    #[error("coherent amplitude |beta|^2 = {amplitude_sq} is not representable with n_cut = {n_cut}")]
    NotRepresentable { amplitude_sq: f64, n_cut: usize },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
