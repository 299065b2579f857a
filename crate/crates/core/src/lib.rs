//! Work extraction from two-mode Gaussian states under environmental
//! (heterodyne) monitoring.
//!
//! - [`gaussian`]: covariance matrices, measurement backaction, entropy,
//!   symplectic invariants, logarithmic negativity.
//! - [`thermo`]: thermal occupation, entropy bookkeeping and extracted work.
//! - [`fock`]: truncated Fock-space simulation used as an independent check.

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod scalar;
pub mod thermo;

pub use error::{Error, Result};
pub use scalar::{Hp, Real};
