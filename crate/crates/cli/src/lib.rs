//! File formats, plotting, verification suites and the command-line front
//! end for `beatty-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod table;
pub mod verify;

pub use error::CliError;
