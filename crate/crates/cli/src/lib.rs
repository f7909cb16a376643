//! Command-line front end: radii reports, the r6 table, the verification suite,
//! sampling estimates and the conjecture sweep.

pub mod commands;
pub mod config;
pub mod suite;

pub use commands::{exit_code, run, Output};
pub use config::{Cli, Command, Format, Property, RunConfig, Target, SCALE_ENV};
