// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON run configuration.
//!
//! Every field is optional; each command fills in its own defaults. Unknown
//! keys are rejected so that a misspelt parameter never silently falls back to
//! a default.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::counting::DEFAULT_MAX_INDEX;
use crate::error::{Error, Result};
use crate::model::PhysicalParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Delta,
    GammaDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

pub const MAX_SWEEP_POINTS: usize = 100_000;

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_SWEEP_POINTS).contains(&self.points) {
            return Err(Error::Config(format!(
                "sweep needs between 2 and {MAX_SWEEP_POINTS} points, got {}",
                self.points
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::Config("sweep bounds must be finite".into()));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(Error::Config("log sweep bounds must be > 0".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|k| {
                let s = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + s * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + s * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

/// A run configuration as read from disk.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub omega_rabi: Option<f64>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    /// `null` (or absent) disables the cutoff.
    pub cutoff: Option<f64>,
    pub temperature: Option<f64>,
    pub gamma_decay: Option<f64>,
    pub gamma_dephasing: Option<f64>,

    /// RK4 step, ps.
    pub step: Option<f64>,
    pub duration_ps: Option<f64>,
    pub duration_rabi_cycles: Option<f64>,
    pub sample_times_ps: Option<Vec<f64>>,
    pub sample_rabi_cycles: Option<Vec<f64>>,
    /// Spacing of `evolve` output rows, ps.
    pub sample_interval_ps: Option<f64>,
    pub window_tolerance: Option<f64>,
    pub max_window_index: Option<u32>,

    pub sweep: Option<SweepSpec>,
    /// Curve family for `sweep-detuning`, K.
    pub temperatures: Option<Vec<f64>>,
    /// J/K
    pub heat_capacity: Option<f64>,

    pub output: Option<String>,
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        if !value.is_object() {
            return Err(Error::Config("top level must be a JSON object".into()));
        }
        serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads `text` (or `{}` when `None`), applies `key=value` overrides and
    /// deserializes.
    pub fn load(text: Option<&str>, overrides: &[String]) -> Result<Self> {
        let mut value: Value = match text {
            Some(t) => serde_json::from_str(t)
                .map_err(|e| Error::Config(format!("invalid JSON: {e}")))?,
            None => Value::Object(Map::new()),
        };
        for raw in overrides {
            let (key, v) = parse_override(raw)?;
            apply_override(&mut value, &key, v)?;
        }
        Self::from_value(value)
    }

    /// Physical parameters with `defaults` filling unset fields.
    pub fn params(&self, defaults: PhysicalParams) -> Result<PhysicalParams> {
        let p = PhysicalParams {
            omega_rabi: self.omega_rabi.unwrap_or(defaults.omega_rabi),
            delta: self.delta.unwrap_or(defaults.delta),
            alpha: self.alpha.unwrap_or(defaults.alpha),
            cutoff: self.cutoff.or(defaults.cutoff),
            temperature: self.temperature.unwrap_or(defaults.temperature),
            gamma_decay: self.gamma_decay.unwrap_or(defaults.gamma_decay),
            gamma_dephasing: self.gamma_dephasing.unwrap_or(defaults.gamma_dephasing),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn max_window_index(&self) -> u32 {
        self.max_window_index.unwrap_or(DEFAULT_MAX_INDEX)
    }

    /// Duration in ps: explicit ps, then Rabi cycles, then `fallback`.
    pub fn duration(&self, rabi_period: f64, fallback: f64) -> Result<f64> {
        let d = match (self.duration_ps, self.duration_rabi_cycles) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "set at most one of duration_ps and duration_rabi_cycles".into(),
                ))
            }
            (Some(ps), None) => ps,
            (None, Some(c)) => c * rabi_period,
            (None, None) => fallback,
        };
        positive("duration", d)
    }
}

pub(crate) fn positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Config(format!("{name} must be finite and > 0, got {value}")))
    }
}

/// Splits `key=value`. The value is taken as JSON when it parses as JSON and
/// as a bare string otherwise (`axis=delta`).
pub fn parse_override(raw: &str) -> Result<(String, Value)> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{raw}` is not key=value")))?;
    let key = key.trim();
    if key.is_empty() || key.split('.').any(str::is_empty) {
        return Err(Error::Config(format!("override `{raw}` has an empty key")));
    }
    let value = value.trim();
    let parsed = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_owned()));
    Ok((key.to_owned(), parsed))
}

/// Sets a dotted path (`sweep.points`) inside a JSON object, creating
/// intermediate objects as needed.
pub fn apply_override(root: &mut Value, key: &str, value: Value) -> Result<()> {
    let mut node = root;
    let mut parts = key.split('.').peekable();
    while let Some(part) = parts.next() {
        let map = node
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("override `{key}`: `{part}` is not inside an object")))?;
        if parts.peek().is_none() {
            map.insert(part.to_owned(), value);
            return Ok(());
        }
        node = map
            .entry(part.to_owned())
            .or_insert_with(|| Value::Object(Map::new()));
    }
    unreachable!("split always yields at least one part")
}
