// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::{positive, RunConfig, Spacing, SweepAxis, SweepSpec};
use super::csv::CsvTable;
use crate::counting::{evolve, initial_state, EvolveOptions, Trajectory};
use crate::error::{Error, Result};
use crate::model::{dressed_basis, rwa_ratio, PhysicalParams, RWA_WARNING_THRESHOLD};
use crate::observables::{
    cooling_estimate, phonon_energy_si, phonon_flux, steady_state, SteadyStateReport,
    DEFAULT_HEAT_CAPACITY,
};

/// Sample times of the distribution snapshots, in Rabi cycles 2π/Λ.
pub const DEFAULT_SNAPSHOT_CYCLES: [f64; 4] = [1.2, 10.0, 40.0, 70.0];
pub const DEFAULT_TEMPERATURES: [f64; 3] = [4.0, 10.0, 20.0];
pub const DEFAULT_EVOLVE_DURATION: f64 = 50.0;
pub const DEFAULT_SAMPLE_INTERVAL: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub table: CsvTable,
    /// Human-readable summary, for commands that print one.
    pub report: Option<String>,
    /// Diagnostics for the error stream.
    pub warnings: Vec<String>,
}

impl CommandOutput {
    fn table(table: CsvTable, warnings: Vec<String>) -> Self {
        Self {
            table,
            report: None,
            warnings,
        }
    }
}

fn rwa_warning(params: &PhysicalParams) -> Result<Option<String>> {
    let basis = dressed_basis(params)?;
    let ratio = rwa_ratio(params, &basis)?;
    Ok((ratio > RWA_WARNING_THRESHOLD).then(|| {
        format!(
            "J(Λ)/Λ = {ratio:.3} exceeds {RWA_WARNING_THRESHOLD}: secular approximation is marginal \
             (Ω = {}, Δ = {}, α = {})",
            params.omega_rabi, params.delta, params.alpha
        )
    }))
}

fn evolve_options(config: &RunConfig) -> Result<EvolveOptions> {
    Ok(EvolveOptions {
        step: config.step.map(|h| positive("step", h)).transpose()?,
        max_index: config.max_window_index(),
    })
}

fn run_trajectory(
    config: &RunConfig,
    params: &PhysicalParams,
    duration: f64,
    samples: &[f64],
) -> Result<Trajectory> {
    let basis = dressed_basis(params)?;
    let mut state = initial_state();
    if let Some(tol) = config.window_tolerance {
        state.window_tolerance = positive("window_tolerance", tol)?;
    }
    evolve(state, duration, samples, params, &basis, &evolve_options(config)?)
}

/// Phonon-number distributions at a few sample times.
pub fn cmd_distribution(config: &RunConfig) -> Result<CommandOutput> {
    let params = config.params(PhysicalParams::default())?;
    let period = params.rabi_period();
    let samples: Vec<f64> = match (&config.sample_times_ps, &config.sample_rabi_cycles) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "set at most one of sample_times_ps and sample_rabi_cycles".into(),
            ))
        }
        (Some(ps), None) => ps.clone(),
        (None, Some(cycles)) => cycles.iter().map(|c| c * period).collect(),
        (None, None) => DEFAULT_SNAPSHOT_CYCLES.iter().map(|c| c * period).collect(),
    };
    if samples.is_empty() {
        return Err(Error::Config("no sample times".into()));
    }
    for &t in &samples {
        positive("sample time", t)?;
    }
    let last = samples.iter().copied().fold(0.0, f64::max);
    let duration = config.duration(period, last)?;
    if last > duration {
        return Err(Error::Config(format!(
            "sample time {last} ps lies beyond the duration {duration} ps"
        )));
    }

    let traj = run_trajectory(config, &params, duration, &samples)?;
    let mut table = CsvTable::new(&["time_ps", "time_rabi_cycles", "m", "p_m"]);
    for rec in &traj.records {
        for (m, p) in rec.snapshot.iter() {
            table.push(vec![rec.time, rec.time / period, f64::from(m), p])?;
        }
    }
    Ok(CommandOutput::table(table, rwa_warning(&params)?.into_iter().collect()))
}

fn sweep_spec(config: &RunConfig, axis: SweepAxis, default: SweepSpec) -> Result<SweepSpec> {
    let spec = config.sweep.clone().unwrap_or(default);
    if spec.axis != axis {
        return Err(Error::Config(format!(
            "this command sweeps {axis:?}, config asks for {:?}",
            spec.axis
        )));
    }
    spec.validate()?;
    Ok(spec)
}

fn steady_point(params: PhysicalParams) -> Result<(PhysicalParams, SteadyStateReport)> {
    params.validate()?;
    let basis = dressed_basis(&params)?;
    Ok((params, steady_state(&params, &basis)?))
}

/// Evaluates every point in parallel; results come back in input order.
fn steady_grid(points: Vec<PhysicalParams>) -> Result<Vec<(PhysicalParams, SteadyStateReport)>> {
    points.into_par_iter().map(steady_point).collect()
}

fn summarize_rwa(results: &[(PhysicalParams, SteadyStateReport)]) -> Vec<String> {
    let flagged: Vec<f64> = results
        .iter()
        .map(|(_, r)| r.rwa_ratio)
        .filter(|&x| x > RWA_WARNING_THRESHOLD)
        .collect();
    if flagged.is_empty() {
        return Vec::new();
    }
    let worst = flagged.iter().copied().fold(0.0, f64::max);
    vec![format!(
        "J(Λ)/Λ exceeds {RWA_WARNING_THRESHOLD} at {} of {} grid points (max {worst:.3}): \
         secular approximation is marginal there",
        flagged.len(),
        results.len()
    )]
}

fn degenerate_warnings(results: &[(PhysicalParams, SteadyStateReport)]) -> Vec<String> {
    results
        .iter()
        .filter(|(_, r)| !r.unique)
        .map(|(p, r)| {
            format!(
                "steady state not unique at Δ = {}, γ = {}, T = {} (gap {:e})",
                p.delta, p.gamma_decay, p.temperature, r.spectral_gap
            )
        })
        .collect()
}

/// Steady-state phonon flux and energy rate against detuning, one curve per
/// temperature.
pub fn cmd_sweep_detuning(config: &RunConfig) -> Result<CommandOutput> {
    let base = config.params(PhysicalParams::default())?;
    let spec = sweep_spec(
        config,
        SweepAxis::Delta,
        SweepSpec {
            axis: SweepAxis::Delta,
            start: -3.0,
            stop: 3.0,
            points: 61,
            spacing: Spacing::Linear,
        },
    )?;
    let temperatures = match (&config.temperatures, config.temperature) {
        (Some(ts), _) => ts.clone(),
        (None, Some(t)) => vec![t],
        (None, None) => DEFAULT_TEMPERATURES.to_vec(),
    };
    if temperatures.is_empty() {
        return Err(Error::Config("temperatures must not be empty".into()));
    }
    let grid = spec.grid();
    let points: Vec<PhysicalParams> = temperatures
        .iter()
        .flat_map(|&temperature| {
            grid.iter().map(move |&delta| PhysicalParams {
                delta,
                temperature,
                ..base
            })
        })
        .collect();
    let results = steady_grid(points)?;

    let mut table = CsvTable::new(&[
        "delta_ps_inv",
        "flux_ps_inv",
        "energy_rate_W",
        "temperature_K",
        "rwa_ratio",
        "unique",
    ]);
    for (p, r) in &results {
        table.push(vec![
            p.delta,
            r.flux,
            r.energy_rate_si,
            p.temperature,
            r.rwa_ratio,
            if r.unique { 1.0 } else { 0.0 },
        ])?;
    }
    let mut warnings = summarize_rwa(&results);
    warnings.extend(degenerate_warnings(&results));
    Ok(CommandOutput::table(table, warnings))
}

/// Steady-state flux against the radiative decay rate.
pub fn cmd_sweep_gamma(config: &RunConfig) -> Result<CommandOutput> {
    let base = config.params(PhysicalParams::default())?;
    let spec = sweep_spec(
        config,
        SweepAxis::GammaDecay,
        SweepSpec {
            axis: SweepAxis::GammaDecay,
            start: 0.0,
            stop: 1.0,
            points: 21,
            spacing: Spacing::Linear,
        },
    )?;
    let points: Vec<PhysicalParams> = spec
        .grid()
        .into_iter()
        .map(|gamma_decay| PhysicalParams { gamma_decay, ..base })
        .collect();
    let results = steady_grid(points)?;
    let mut table = CsvTable::new(&["gamma_ps_inv", "flux_ps_inv"]);
    for (p, r) in &results {
        table.push(vec![p.gamma_decay, r.flux])?;
    }
    let mut warnings = summarize_rwa(&results);
    warnings.extend(degenerate_warnings(&results));
    Ok(CommandOutput::table(table, warnings))
}

/// Full trajectory dump on a regular time grid.
pub fn cmd_evolve(config: &RunConfig) -> Result<CommandOutput> {
    let params = config.params(PhysicalParams::default())?;
    let basis = dressed_basis(&params)?;
    let duration = config.duration(params.rabi_period(), DEFAULT_EVOLVE_DURATION)?;
    let samples = match &config.sample_times_ps {
        Some(ts) => ts.clone(),
        None => {
            let dt = positive(
                "sample_interval_ps",
                config.sample_interval_ps.unwrap_or(DEFAULT_SAMPLE_INTERVAL),
            )?;
            let n = (duration / dt + 1e-9).floor() as u64;
            let mut ts: Vec<f64> = (0..=n).map(|k| k as f64 * dt).collect();
            if ts.last().is_some_and(|&t| t < duration * (1.0 - 1e-12)) {
                ts.push(duration);
            }
            ts
        }
    };
    let traj = run_trajectory(config, &params, duration, &samples)?;
    let mut table = CsvTable::new(&[
        "time_ps",
        "mean_m",
        "variance_m",
        "rho_gg",
        "rho_ee",
        "re_rho_ge",
        "im_rho_ge",
        "flux_ps_inv",
    ]);
    for rec in &traj.records {
        let rho = &rec.reduced;
        table.push(vec![
            rec.time,
            rec.snapshot.mean,
            rec.snapshot.variance,
            rho.get(0, 0).re,
            rho.get(1, 1).re,
            rho.get(0, 1).re,
            rho.get(0, 1).im,
            phonon_flux(rho, &params, &basis)?,
        ])?;
    }
    Ok(CommandOutput::table(table, rwa_warning(&params)?.into_iter().collect()))
}

/// Steady-state heat-transfer rate and temperature slope at one point.
pub fn cmd_cooling_estimate(config: &RunConfig) -> Result<CommandOutput> {
    let params = config.params(PhysicalParams {
        temperature: 20.0,
        ..PhysicalParams::default()
    })?;
    let capacity = config.heat_capacity.unwrap_or(DEFAULT_HEAT_CAPACITY);
    let (params, report) = steady_point(params)?;
    let cooling = cooling_estimate(report.energy_rate_si, capacity)?;
    let lambda = params.lambda_gap();

    let mut text = String::new();
    let _ = writeln!(
        text,
        "Ω = {} ps⁻¹, Δ = {} ps⁻¹, α = {} ps², T = {} K, γ_decay = {} ps⁻¹, γ_deph = {} ps⁻¹",
        params.omega_rabi,
        params.delta,
        params.alpha,
        params.temperature,
        params.gamma_decay,
        params.gamma_dephasing
    );
    let _ = writeln!(text, "phonon energy ħΛ     = {:.4e} J", phonon_energy_si(lambda));
    let _ = writeln!(text, "steady phonon flux   = {:.6} ps⁻¹", report.flux);
    let _ = writeln!(text, "energy rate Λ·flux   = {:.6} ps⁻²", report.energy_rate_natural);
    let _ = writeln!(text, "energy rate (SI)     = {:.4e} W", report.energy_rate_si);
    let _ = writeln!(text, "heat capacity        = {:.4e} J/K", capacity);
    let _ = writeln!(text, "temperature slope    = {:.4} K/s", cooling.temperature_slope);
    if report.flux >= 0.0 {
        let _ = writeln!(text, "no cooling possible: the bath receives net phonon emission here");
    } else {
        let _ = writeln!(text, "net phonon absorption: the bath is cooled");
    }

    let mut table = CsvTable::new(&[
        "omega_ps_inv",
        "delta_ps_inv",
        "temperature_K",
        "gamma_decay_ps_inv",
        "flux_ps_inv",
        "phonon_energy_J",
        "energy_rate_natural_ps_inv2",
        "energy_rate_W",
        "heat_capacity_J_per_K",
        "temperature_slope_K_per_s",
    ]);
    table.push(vec![
        params.omega_rabi,
        params.delta,
        params.temperature,
        params.gamma_decay,
        report.flux,
        phonon_energy_si(lambda),
        report.energy_rate_natural,
        report.energy_rate_si,
        capacity,
        cooling.temperature_slope,
    ])?;
    let mut warnings: Vec<String> = rwa_warning(&params)?.into_iter().collect();
    if !report.unique {
        warnings.push(format!("steady state not unique (gap {:e})", report.spectral_gap));
    }
    Ok(CommandOutput {
        table,
        report: Some(text),
        warnings,
    })
}
