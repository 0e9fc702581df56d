// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which edge of the phonon-number window ran into the hard cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSide {
    Lower,
    Upper,
}

impl std::fmt::Display for WindowSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WindowSide::Lower => "lower",
            WindowSide::Upper => "upper",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error(
        "phonon-number window hit the cap |m| <= {cap} on the {side} side at t = {time} ps \
         (boundary block trace {boundary_trace:e})"
    )]
    WindowCap {
        side: WindowSide,
        cap: u32,
        time: f64,
        boundary_trace: f64,
    },

    #[error("no steady state: every dissipative channel has zero rate")]
    NoDissipation,

    #[error("config: {0}")]
    Config(String),

    #[error("could not write CSV: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}
