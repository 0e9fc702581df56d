// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! Phonon-number-resolved density matrices.
//!
//! The state is a ladder of 2×2 blocks `ρ_m`, one per net number `m` of
//! phonons emitted into the bath (negative `m` means net absorption). Under
//! the secular counting master equation a phonon emission (`P_Λ`, rate Γ↓)
//! moves weight from `ρ_{m−1}` into `ρ_m` and an absorption (`P_Λ†`, rate Γ↑)
//! from `ρ_{m+1}` into `ρ_m`:
//!
//! ```text
//! dρ_m/dt = −i[H_S, ρ_m]
//!         + Γ↓ (2 P_Λ ρ_{m−1} P_Λ† − {P_Λ†P_Λ, ρ_m})
//!         + Γ↑ (2 P_Λ† ρ_{m+1} P_Λ − {P_Λ P_Λ†, ρ_m})
//!         + D[σ_−]ρ_m + D[σ_z]ρ_m
//! ```
//!
//! Radiative decay and pure dephasing are not phonon processes and act on
//! each block without shifting `m`.

use crate::algebra::{anticommutator, commutator, dissipator_unchecked, CMatrix2, JumpTerm};
use crate::error::{Error, Result, WindowSide};
use crate::model::{hamiltonian_matrix, phonon_rates, DressedBasis, PhononRates, PhysicalParams};

pub const DEFAULT_WINDOW_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_INDEX: u32 = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct NumberResolvedState {
    /// ps
    pub time: f64,
    /// Phonon number of `blocks[0]`.
    pub m_min: i32,
    pub blocks: Vec<CMatrix2>,
    /// Boundary blocks heavier than this trigger window growth.
    pub window_tolerance: f64,
}

/// `ρ_0(0) = |g⟩⟨g|` on the window `[−1, 1]`, every other block empty.
pub fn initial_state() -> NumberResolvedState {
    NumberResolvedState {
        time: 0.0,
        m_min: -1,
        blocks: vec![
            CMatrix2::ZERO,
            CMatrix2::from_real(1.0, 0.0, 0.0, 0.0),
            CMatrix2::ZERO,
        ],
        window_tolerance: DEFAULT_WINDOW_TOLERANCE,
    }
}

impl NumberResolvedState {
    pub fn m_max(&self) -> i32 {
        self.m_min + self.blocks.len() as i32 - 1
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> + '_ {
        self.m_min..=self.m_max()
    }

    pub fn block(&self, m: i32) -> Option<&CMatrix2> {
        let k = m.checked_sub(self.m_min)?;
        usize::try_from(k).ok().and_then(|k| self.blocks.get(k))
    }

    /// `p_m = tr ρ_m`, in window order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.trace().re).collect()
    }

    pub fn total_trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.trace().re).sum()
    }

    /// `ρ = Σ_m ρ_m`.
    pub fn reduced(&self) -> CMatrix2 {
        self.blocks.iter().fold(CMatrix2::ZERO, |acc, b| acc + *b)
    }

    pub fn max_hermiticity_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(CMatrix2::hermiticity_residual)
            .fold(0.0, f64::max)
    }

    fn extend_lower(&mut self) {
        self.blocks.insert(0, CMatrix2::ZERO);
        self.m_min -= 1;
    }

    fn extend_upper(&mut self) {
        self.blocks.push(CMatrix2::ZERO);
    }

    /// Keeps two near-empty guard blocks on every side that a phonon channel
    /// can feed: the window grows by one index whenever either of the two
    /// outermost blocks on that side carries more than `window_tolerance`.
    /// Weight then has to cross two blocks within a single step to leak out.
    fn ensure_window(&mut self, rates: PhononRates, max_index: u32) -> Result<()> {
        let tol = self.window_tolerance;
        let edge_weight = |blocks: &[CMatrix2]| {
            blocks
                .iter()
                .map(|b| b.trace().re.abs())
                .fold(0.0, f64::max)
        };
        if rates.gamma_up > 0.0 {
            let lower = edge_weight(&self.blocks[..2.min(self.blocks.len())]);
            if lower > tol {
                if self.m_min.unsigned_abs() + 1 > max_index {
                    return Err(Error::WindowCap {
                        side: WindowSide::Lower,
                        cap: max_index,
                        time: self.time,
                        boundary_trace: lower,
                    });
                }
                self.extend_lower();
            }
        }
        if rates.gamma_down > 0.0 {
            let n = self.blocks.len();
            let upper = edge_weight(&self.blocks[n.saturating_sub(2)..]);
            if upper > tol {
                if self.m_max().unsigned_abs() + 1 > max_index {
                    return Err(Error::WindowCap {
                        side: WindowSide::Upper,
                        cap: max_index,
                        time: self.time,
                        boundary_trace: upper,
                    });
                }
                self.extend_upper();
            }
        }
        Ok(())
    }
}

/// The counting generator with all operator products precomputed.
#[derive(Debug, Clone)]
pub struct CountingDynamics {
    hamiltonian: CMatrix2,
    p_lambda: CMatrix2,
    p_lambda_dag: CMatrix2,
    /// `P_Λ†P_Λ`
    emit_loss: CMatrix2,
    /// `P_Λ P_Λ†`
    absorb_loss: CMatrix2,
    rates: PhononRates,
    local: Vec<JumpTerm>,
}

impl CountingDynamics {
    pub fn new(params: &PhysicalParams, basis: &DressedBasis) -> Result<Self> {
        params.validate()?;
        let rates = phonon_rates(params, basis)?;
        let p = basis.p_lambda;
        let pd = p.dagger();
        let local = [
            (CMatrix2::sigma_minus(), params.gamma_decay),
            (CMatrix2::sigma_z(), params.gamma_dephasing),
        ]
        .into_iter()
        .filter(|&(_, rate)| rate > 0.0)
        .map(|(op, rate)| JumpTerm::new(op, rate))
        .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            hamiltonian: hamiltonian_matrix(params),
            p_lambda: p,
            p_lambda_dag: pd,
            emit_loss: pd * p,
            absorb_loss: p * pd,
            rates,
            local,
        })
    }

    pub fn rates(&self) -> PhononRates {
        self.rates
    }

    /// Fixed RK4 step: `min(0.01/Λ, 0.01/Σ rates, 0.01)` ps.
    pub fn default_step(&self, params: &PhysicalParams) -> f64 {
        let total_rate = self.rates.gamma_down
            + self.rates.gamma_up
            + params.gamma_decay
            + params.gamma_dephasing
            + 1e-30;
        (0.01 / params.lambda_gap()).min(0.01 / total_rate).min(0.01)
    }

    /// Part of `dρ_m/dt` that depends on `ρ_m` alone.
    fn block_local(&self, rho: &CMatrix2) -> CMatrix2 {
        let PhononRates {
            gamma_down,
            gamma_up,
        } = self.rates;
        let mut d = commutator(&self.hamiltonian, rho) * num_complex::Complex64::new(0.0, -1.0);
        if gamma_down > 0.0 {
            d -= anticommutator(&self.emit_loss, rho).scale(gamma_down);
        }
        if gamma_up > 0.0 {
            d -= anticommutator(&self.absorb_loss, rho).scale(gamma_up);
        }
        for jump in &self.local {
            d += dissipator_unchecked(&jump.operator, jump.rate, rho);
        }
        d
    }

    /// Time derivative of every block; blocks outside the window count as zero.
    pub fn derivative_into(&self, blocks: &[CMatrix2], out: &mut Vec<CMatrix2>) {
        let PhononRates {
            gamma_down,
            gamma_up,
        } = self.rates;
        out.clear();
        out.extend(blocks.iter().map(|b| self.block_local(b)));
        let n = blocks.len();
        for k in 0..n {
            if gamma_down > 0.0 && k + 1 < n {
                // emission: m → m + 1
                out[k + 1] += (self.p_lambda * blocks[k] * self.p_lambda_dag).scale(2.0 * gamma_down);
            }
            if gamma_up > 0.0 && k >= 1 {
                // absorption: m → m − 1
                out[k - 1] += (self.p_lambda_dag * blocks[k] * self.p_lambda).scale(2.0 * gamma_up);
            }
        }
    }

    pub fn derivative(&self, state: &NumberResolvedState) -> Vec<CMatrix2> {
        let mut out = Vec::with_capacity(state.blocks.len());
        self.derivative_into(&state.blocks, &mut out);
        out
    }

    /// One classical fourth-order Runge-Kutta step of length `h` on the
    /// current window.
    pub fn step_rk4(&self, state: &mut NumberResolvedState, h: f64, scratch: &mut Rk4Scratch) {
        let Rk4Scratch { k1, k2, k3, k4, tmp } = scratch;
        let y = &state.blocks;
        self.derivative_into(y, k1);
        axpy_into(tmp, y, k1, 0.5 * h);
        self.derivative_into(tmp, k2);
        axpy_into(tmp, y, k2, 0.5 * h);
        self.derivative_into(tmp, k3);
        axpy_into(tmp, y, k3, h);
        self.derivative_into(tmp, k4);
        let w = h / 6.0;
        for (i, b) in state.blocks.iter_mut().enumerate() {
            *b += (k1[i] + k2[i].scale(2.0) + k3[i].scale(2.0) + k4[i]).scale(w);
        }
        state.time += h;
    }
}

fn axpy_into(out: &mut Vec<CMatrix2>, y: &[CMatrix2], k: &[CMatrix2], h: f64) {
    out.clear();
    out.extend(y.iter().zip(k).map(|(a, b)| *a + b.scale(h)));
}

/// Reusable stage buffers for [`CountingDynamics::step_rk4`].
#[derive(Debug, Default)]
pub struct Rk4Scratch {
    k1: Vec<CMatrix2>,
    k2: Vec<CMatrix2>,
    k3: Vec<CMatrix2>,
    k4: Vec<CMatrix2>,
    tmp: Vec<CMatrix2>,
}

/// Derivative ladder of the counting master equation at `state`.
pub fn generator_apply(
    state: &NumberResolvedState,
    params: &PhysicalParams,
    basis: &DressedBasis,
) -> Result<Vec<CMatrix2>> {
    Ok(CountingDynamics::new(params, basis)?.derivative(state))
}

pub fn step_rk4(
    state: &NumberResolvedState,
    h: f64,
    params: &PhysicalParams,
    basis: &DressedBasis,
) -> Result<NumberResolvedState> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::invalid("h", h, "step must be finite and > 0"));
    }
    let dynamics = CountingDynamics::new(params, basis)?;
    let mut next = state.clone();
    dynamics.step_rk4(&mut next, h, &mut Rk4Scratch::default());
    Ok(next)
}

/// A number-resolved summary of one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSnapshot {
    pub time: f64,
    pub m_min: i32,
    /// `p_m` for `m = m_min, m_min + 1, ...`.
    pub probabilities: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

impl DistributionSnapshot {
    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(k, &p)| (self.m_min + k as i32, p))
    }

    pub fn probability(&self, m: i32) -> f64 {
        self.iter().find(|&(k, _)| k == m).map_or(0.0, |(_, p)| p)
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

pub fn snapshot_distribution(state: &NumberResolvedState) -> DistributionSnapshot {
    let probabilities = state.probabilities();
    let (first, second) = state
        .indices()
        .zip(&probabilities)
        .fold((0.0, 0.0), |(s1, s2), (m, &p)| {
            let m = f64::from(m);
            (s1 + m * p, s2 + m * m * p)
        });
    DistributionSnapshot {
        time: state.time,
        m_min: state.m_min,
        probabilities,
        mean: first,
        variance: second - first * first,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub time: f64,
    pub snapshot: DistributionSnapshot,
    pub reduced: CMatrix2,
}

/// Worst-case conservation diagnostics seen over every step of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationMonitor {
    pub max_trace_drift: f64,
    pub max_hermiticity_residual: f64,
    pub min_reduced_eigenvalue: f64,
}

impl ConservationMonitor {
    fn start(state: &NumberResolvedState) -> Self {
        let mut m = Self {
            max_trace_drift: 0.0,
            max_hermiticity_residual: 0.0,
            min_reduced_eigenvalue: f64::INFINITY,
        };
        m.observe(state, state.total_trace());
        m
    }

    fn observe(&mut self, state: &NumberResolvedState, reference_trace: f64) {
        self.max_trace_drift = self
            .max_trace_drift
            .max((state.total_trace() - reference_trace).abs());
        self.max_hermiticity_residual = self
            .max_hermiticity_residual
            .max(state.max_hermiticity_residual());
        self.min_reduced_eigenvalue = self
            .min_reduced_eigenvalue
            .min(state.reduced().hermitian_eigenvalues()[0]);
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub records: Vec<TrajectoryRecord>,
    pub final_state: NumberResolvedState,
    pub conservation: ConservationMonitor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Step size in ps; `None` picks [`CountingDynamics::default_step`].
    pub step: Option<f64>,
    pub max_index: u32,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            step: None,
            max_index: DEFAULT_MAX_INDEX,
        }
    }
}

/// Integrates `state` forward by `duration` ps, recording a
/// [`TrajectoryRecord`] at each of `sample_times` (absolute times, ps).
///
/// Each interval between consecutive targets is split into equal steps no
/// longer than the requested step, so samples land exactly on their times.
/// Sample times outside `[state.time, state.time + duration]` are ignored.
pub fn evolve(
    state: NumberResolvedState,
    duration: f64,
    sample_times: &[f64],
    params: &PhysicalParams,
    basis: &DressedBasis,
    options: &EvolveOptions,
) -> Result<Trajectory> {
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::invalid("duration", duration, "must be finite and > 0"));
    }
    let dynamics = CountingDynamics::new(params, basis)?;
    let h_max = match options.step {
        Some(h) if h > 0.0 && h.is_finite() => h,
        Some(h) => return Err(Error::invalid("step", h, "must be finite and > 0")),
        None => dynamics.default_step(params),
    };

    let t0 = state.time;
    let t_end = t0 + duration;
    let mut samples: Vec<f64> = sample_times
        .iter()
        .copied()
        .filter(|t| t.is_finite() && (t0..=t_end).contains(t))
        .collect();
    samples.sort_by(f64::total_cmp);
    samples.dedup();

    let mut state = state;
    let reference = state.total_trace();
    let mut monitor = ConservationMonitor::start(&state);
    let mut scratch = Rk4Scratch::default();
    let mut records = Vec::with_capacity(samples.len());

    let mut targets = samples.clone();
    if targets.last().is_none_or(|&t| t < t_end) {
        targets.push(t_end);
    }
    let mut next_sample = samples.iter().peekable();

    for &target in &targets {
        let span = target - state.time;
        if span > 0.0 {
            let n = (span / h_max).ceil().max(1.0) as u64;
            let h = span / n as f64;
            let start = state.time;
            for k in 1..=n {
                state.ensure_window(dynamics.rates, options.max_index)?;
                dynamics.step_rk4(&mut state, h, &mut scratch);
                state.time = start + h * k as f64;
                monitor.observe(&state, reference);
            }
            state.ensure_window(dynamics.rates, options.max_index)?;
        }
        state.time = target;
        if next_sample.peek() == Some(&&target) {
            next_sample.next();
            records.push(TrajectoryRecord {
                time: target,
                snapshot: snapshot_distribution(&state),
                reduced: state.reduced(),
            });
        }
    }

    Ok(Trajectory {
        records,
        final_state: state,
        conservation: monitor,
    })
}
