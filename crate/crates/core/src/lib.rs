// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! Phonon counting for an optically driven exciton.
//!
//! A laser-driven two-level system (crystal ground state `|g⟩`, exciton
//! `|e⟩`) exchanges phonons with a thermal bath through its dressed states.
//! This crate evolves the ladder of phonon-number-resolved density matrices
//! `ρ_m`, computes the steady-state phonon flux and the heat it carries, and
//! estimates how fast a detuned drive can cool the surrounding lattice.
//!
//! Modules, bottom-up:
//!
//! * [`algebra`]: 2×2 complex matrices, Lindblad dissipators, vectorized
//!   generators.
//! * [`model`]: parameters, dressed basis, spectral density, Bose occupancy,
//!   phonon rates.
//! * [`counting`]: the number-resolved state and its RK4 evolution.
//! * [`observables`]: flux, steady state, energy rate, cooling estimate.
//! * [`cli`]: the `phonon-pump` command-line scenarios.

// `!(x > 0.0)` is how parameter checks reject NaN along with non-positives
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod counting;
pub mod error;
pub mod model;
pub mod observables;

pub use error::{Error, Result};
