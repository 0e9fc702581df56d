// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical parameters, dressed states and phonon rates.
//!
//! Units: frequencies and rates in ps⁻¹, time in ps, temperature in K, with
//! ħ = 1 inside the dynamics. SI values only appear at reporting boundaries
//! via [`units`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::CMatrix2;
use crate::error::{Error, Result};

pub mod units {
    /// ħ/k_B in K·ps (CODATA 2018, exact SI definitions).
    pub const HBAR_OVER_KB: f64 = 7.638_232_577;
    /// ħ in J·s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// ps⁻¹ → s⁻¹.
    pub const PER_PS: f64 = 1.0e12;
}

/// Externally accessible knobs of the driven exciton and its phonon bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Rabi frequency Ω, ps⁻¹.
    pub omega_rabi: f64,
    /// Laser detuning Δ, ps⁻¹.
    pub delta: f64,
    /// Exciton-phonon coupling α, ps².
    pub alpha: f64,
    /// Gaussian high-frequency cutoff ω_c, ps⁻¹; `None` drops the factor.
    pub cutoff: Option<f64>,
    /// Bath temperature, K.
    pub temperature: f64,
    /// Radiative decay rate (jump operator σ_−), ps⁻¹.
    pub gamma_decay: f64,
    /// Pure dephasing rate (jump operator σ_z), ps⁻¹.
    pub gamma_dephasing: f64,
}

impl Default for PhysicalParams {
    /// Ω = Δ = 1 ps⁻¹, α = 0.25 ps², no cutoff, T = 10 K, radiative decay
    /// 0.1 ps⁻¹, no dephasing.
    fn default() -> Self {
        Self {
            omega_rabi: 1.0,
            delta: 1.0,
            alpha: 0.25,
            cutoff: None,
            temperature: 10.0,
            gamma_decay: 0.1,
            gamma_dephasing: 0.0,
        }
    }
}

fn finite_nonneg(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "must be finite and >= 0"))
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_rabi.is_finite() && self.omega_rabi > 0.0) {
            return Err(Error::invalid(
                "omega_rabi",
                self.omega_rabi,
                "must be finite and > 0",
            ));
        }
        if !self.delta.is_finite() {
            return Err(Error::invalid("delta", self.delta, "must be finite"));
        }
        finite_nonneg("alpha", self.alpha)?;
        finite_nonneg("temperature", self.temperature)?;
        finite_nonneg("gamma_decay", self.gamma_decay)?;
        finite_nonneg("gamma_dephasing", self.gamma_dephasing)?;
        if let Some(wc) = self.cutoff {
            if !(wc.is_finite() && wc > 0.0) {
                return Err(Error::invalid("cutoff", wc, "must be finite and > 0"));
            }
        }
        Ok(())
    }

    /// Dressed-state splitting Λ = √(Ω² + Δ²).
    pub fn lambda_gap(&self) -> f64 {
        self.omega_rabi.hypot(self.delta)
    }

    /// Duration of one full Rabi cycle, 2π/Λ, in ps.
    pub fn rabi_period(&self) -> f64 {
        std::f64::consts::TAU / self.lambda_gap()
    }
}

/// `H_S = Δ/2 σ_z + Ω/2 σ_x` in the laser frame.
pub fn hamiltonian_matrix(params: &PhysicalParams) -> CMatrix2 {
    CMatrix2::sigma_z() * (0.5 * params.delta) + CMatrix2::sigma_x() * (0.5 * params.omega_rabi)
}

/// Laser-dressed eigenbasis of `H_S` and the phonon eigenoperators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedBasis {
    /// Mixing angle θ ∈ (0, π/2), with 2θ = atan2(Ω, Δ).
    pub theta: f64,
    /// Λ, ps⁻¹.
    pub lambda_gap: f64,
    /// `P_0 = cos2θ (|−⟩⟨−| − |+⟩⟨+|)/2`.
    pub p0: CMatrix2,
    /// `P_Λ = sin2θ |−⟩⟨+|`: phonon emission, |+⟩ → |−⟩.
    pub p_lambda: CMatrix2,
    /// `|−⟩ = cosθ|g⟩ − sinθ|e⟩`, eigenvalue −Λ/2.
    pub minus_state: [Complex64; 2],
    /// `|+⟩ = sinθ|g⟩ + cosθ|e⟩`, eigenvalue +Λ/2.
    pub plus_state: [Complex64; 2],
}

impl DressedBasis {
    pub fn sin_2theta(&self) -> f64 {
        (2.0 * self.theta).sin()
    }

    pub fn cos_2theta(&self) -> f64 {
        (2.0 * self.theta).cos()
    }

    pub fn projector_minus(&self) -> CMatrix2 {
        CMatrix2::outer(self.minus_state, self.minus_state)
    }

    pub fn projector_plus(&self) -> CMatrix2 {
        CMatrix2::outer(self.plus_state, self.plus_state)
    }
}

pub fn dressed_basis(params: &PhysicalParams) -> Result<DressedBasis> {
    if !(params.omega_rabi > 0.0) {
        return Err(Error::invalid(
            "omega_rabi",
            params.omega_rabi,
            "dressed basis needs a nonzero drive",
        ));
    }
    let two_theta = params.omega_rabi.atan2(params.delta);
    let theta = 0.5 * two_theta;
    let (s, c) = theta.sin_cos();
    let re = |x: f64| Complex64::new(x, 0.0);
    let minus_state = [re(c), re(-s)];
    let plus_state = [re(s), re(c)];
    let minus_proj = CMatrix2::outer(minus_state, minus_state);
    let plus_proj = CMatrix2::outer(plus_state, plus_state);
    Ok(DressedBasis {
        theta,
        lambda_gap: params.lambda_gap(),
        p0: (minus_proj - plus_proj) * (0.5 * two_theta.cos()),
        p_lambda: CMatrix2::outer(minus_state, plus_state) * two_theta.sin(),
        minus_state,
        plus_state,
    })
}

/// `J(ω) = α ω³ exp(−ω²/ω_c²)`, the exponential omitted without a cutoff.
pub fn spectral_density(omega: f64, params: &PhysicalParams) -> Result<f64> {
    if !(omega >= 0.0) {
        return Err(Error::invalid("omega", omega, "spectral density needs omega >= 0"));
    }
    let power_law = params.alpha * omega.powi(3);
    Ok(match params.cutoff {
        Some(wc) => power_law * (-(omega / wc).powi(2)).exp(),
        None => power_law,
    })
}

/// Bose occupancy `1/(exp(ħω/k_B T) − 1)`; exactly zero at T = 0.
pub fn thermal_occupancy(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::invalid("omega", omega, "thermal occupancy needs omega > 0"));
    }
    if !(temperature >= 0.0) {
        return Err(Error::invalid("temperature", temperature, "must be >= 0"));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / boltzmann_exponent(omega, temperature).exp_m1())
}

/// βħω = (ħ/k_B)·ω/T; infinite at T = 0.
pub fn boltzmann_exponent(omega: f64, temperature: f64) -> f64 {
    units::HBAR_OVER_KB * omega / temperature
}

/// Phonon emission (↓) and absorption (↑) rates at the dressed splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhononRates {
    pub gamma_down: f64,
    pub gamma_up: f64,
}

/// `Γ↓ = J(Λ)(n(Λ)+1)/2`, `Γ↑ = J(Λ) n(Λ)/2`.
pub fn phonon_rates(params: &PhysicalParams, basis: &DressedBasis) -> Result<PhononRates> {
    let j = spectral_density(basis.lambda_gap, params)?;
    let n = thermal_occupancy(basis.lambda_gap, params.temperature)?;
    Ok(PhononRates {
        gamma_down: 0.5 * j * (n + 1.0),
        gamma_up: 0.5 * j * n,
    })
}

/// `J(Λ)/Λ`; the secular approximation wants this small.
pub fn rwa_ratio(params: &PhysicalParams, basis: &DressedBasis) -> Result<f64> {
    Ok(spectral_density(basis.lambda_gap, params)? / basis.lambda_gap)
}

/// Ratio above which the secular approximation is flagged as marginal.
pub const RWA_WARNING_THRESHOLD: f64 = 0.5;
