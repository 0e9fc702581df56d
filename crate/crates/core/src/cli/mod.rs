// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: config loading, scenario commands and CSV output.

pub mod commands;
pub mod config;
pub mod csv;

pub use commands::{
    cmd_cooling_estimate, cmd_distribution, cmd_evolve, cmd_sweep_detuning, cmd_sweep_gamma,
    CommandOutput,
};
pub use config::{RunConfig, Spacing, SweepAxis, SweepSpec};
pub use csv::CsvTable;

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_WINDOW_CAP: i32 = 3;

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::WindowCap { .. } => EXIT_WINDOW_CAP,
        Error::Io(_) => EXIT_IO,
        Error::InvalidParameter { .. } | Error::NoDissipation | Error::Config(_) => EXIT_CONFIG,
    }
}
