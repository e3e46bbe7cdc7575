// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for the `dtcm-core` simulator: configuration
//! files, figure presets, sweeps written as CSV or plot grids, and the
//! verification suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod verify;

pub use config::{ConfigError, ScenarioConfig};
pub use error::CliError;
