//! Command-line front end: parameter sweeps, validation runs and law tables.

pub mod config;
pub mod format;
pub mod show_law;
pub mod sweep;
pub mod validate;
