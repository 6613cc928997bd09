//! File formats, reports and the command-line driver for `utastar-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod docs;
pub mod error;
pub mod input;
pub mod output;
pub mod plot;
pub mod simulate;

pub use error::{CliError, CliResult};
