//! Batch front end for the weak-shock reflection-diffraction library.
// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use checks::{verify, CheckEntry, Status, VerificationReport};
pub use commands::{run, Command, Output};
pub use config::{parse_overrides, RunConfig};
pub use error::{CliError, Result};
