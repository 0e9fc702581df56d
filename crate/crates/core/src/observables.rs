// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! Observables of the reduced two-level state: phonon flux, steady state,
//! heat-transfer rate and the cooling estimate.
//!
//! Sign convention: a positive flux is net phonon emission (bath heating),
//! a negative flux net absorption (bath cooling).

use num_complex::Complex64;

use crate::algebra::{build_generator, devectorize, CMatrix2, JumpTerm};
use crate::counting::{NumberResolvedState, Trajectory};
use crate::error::{Error, Result};
use crate::model::{
    boltzmann_exponent, hamiltonian_matrix, phonon_rates, rwa_ratio, units, DressedBasis,
    PhysicalParams,
};

/// Singular values below this count as zero when judging kernel uniqueness.
pub const DEGENERACY_THRESHOLD: f64 = 1e-10;

/// Mass density of GaAs, kg/m³.
pub const GAAS_DENSITY: f64 = 5.3e3;
/// Specific heat of GaAs, J/(kg·K).
pub const GAAS_SPECIFIC_HEAT: f64 = 350.0;
/// One cubic micrometre, m³.
pub const CUBIC_MICROMETRE: f64 = 1.0e-18;
/// Heat capacity of a 1 µm³ GaAs cube, J/K, as quoted.
pub const DEFAULT_HEAT_CAPACITY: f64 = 1.85e-12;

pub fn reduced_density(state: &NumberResolvedState) -> CMatrix2 {
    state.reduced()
}

/// Net phonon emission rate `2 tr(Γ↓ Q ρ Q† − Γ↑ Q† ρ Q)` with `Q = P_Λ`, ps⁻¹.
pub fn phonon_flux(rho: &CMatrix2, params: &PhysicalParams, basis: &DressedBasis) -> Result<f64> {
    let rates = phonon_rates(params, basis)?;
    let q = basis.p_lambda;
    let qd = q.dagger();
    let emission = (q * *rho * qd).trace().re;
    let absorption = (qd * *rho * q).trace().re;
    Ok(2.0 * (rates.gamma_down * emission - rates.gamma_up * absorption))
}

/// Jump operators of the reduced master equation: `(P_Λ, 2Γ↓)`,
/// `(P_Λ†, 2Γ↑)`, `(σ_−, γ_decay)`, `(σ_z, γ_deph)`.
pub fn reduced_jumps(params: &PhysicalParams, basis: &DressedBasis) -> Result<Vec<JumpTerm>> {
    let rates = phonon_rates(params, basis)?;
    Ok(vec![
        JumpTerm::new(basis.p_lambda, 2.0 * rates.gamma_down)?,
        JumpTerm::new(basis.p_lambda.dagger(), 2.0 * rates.gamma_up)?,
        JumpTerm::new(CMatrix2::sigma_minus(), params.gamma_decay)?,
        JumpTerm::new(CMatrix2::sigma_z(), params.gamma_dephasing)?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateReport {
    pub rho_ss: CMatrix2,
    /// ⟨ṅ⟩_ss, ps⁻¹.
    pub flux: f64,
    /// Λ·⟨ṅ⟩_ss, ps⁻².
    pub energy_rate_natural: f64,
    /// W
    pub energy_rate_si: f64,
    pub rwa_ratio: f64,
    /// `false` when the generator has a degenerate zero eigenvalue.
    pub unique: bool,
    /// Second-smallest singular value of the vectorized generator.
    pub spectral_gap: f64,
}

pub fn steady_state(params: &PhysicalParams, basis: &DressedBasis) -> Result<SteadyStateReport> {
    params.validate()?;
    let jumps = reduced_jumps(params, basis)?;
    if jumps.iter().all(|j| j.rate == 0.0) {
        return Err(Error::NoDissipation);
    }
    let generator = build_generator(&jumps, &hamiltonian_matrix(params));
    let kernel = generator.kernel();
    let raw = devectorize(&kernel.vector);
    let rho = raw * (Complex64::new(1.0, 0.0) / raw.trace());
    // strip the rounding-level anti-Hermitian part left by the SVD
    let rho_ss = (rho + rho.dagger()).scale(0.5);

    let flux = phonon_flux(&rho_ss, params, basis)?;
    let lambda = basis.lambda_gap;
    Ok(SteadyStateReport {
        rho_ss,
        flux,
        energy_rate_natural: lambda * flux,
        energy_rate_si: energy_rate_si(flux, lambda),
        rwa_ratio: rwa_ratio(params, basis)?,
        unique: kernel.second_singular_value >= DEGENERACY_THRESHOLD,
        spectral_gap: kernel.second_singular_value,
    })
}

/// ħΛ in joules.
pub fn phonon_energy_si(lambda_gap: f64) -> f64 {
    units::HBAR * lambda_gap * units::PER_PS
}

/// `ħ · Λ · ⟨ṅ⟩` converted to watts; the sign of the flux is kept.
pub fn energy_rate_si(flux: f64, lambda_gap: f64) -> f64 {
    phonon_energy_si(lambda_gap) * flux * units::PER_PS
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoltzmannDiagnostic {
    /// `tr(ρ_0 |+⟩⟨+|) / tr(ρ_1)` at the end of the run; `None` if `ρ_1`
    /// is empty.
    pub measured: Option<f64>,
    /// `exp(−βΛ)`
    pub expected: f64,
}

pub fn boltzmann_diagnostic(
    trajectory: &Trajectory,
    basis: &DressedBasis,
    temperature: f64,
) -> BoltzmannDiagnostic {
    let state = &trajectory.final_state;
    let upper = state
        .block(0)
        .map_or(0.0, |rho0| (*rho0 * basis.projector_plus()).trace().re);
    let emitted = state.block(1).map_or(0.0, |rho1| rho1.trace().re);
    let expected = if temperature > 0.0 {
        (-boltzmann_exponent(basis.lambda_gap, temperature)).exp()
    } else {
        0.0
    };
    BoltzmannDiagnostic {
        measured: (emitted > 0.0).then(|| upper / emitted),
        expected,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingEstimate {
    /// W
    pub energy_rate_si: f64,
    /// J/K
    pub heat_capacity: f64,
    /// K/s, negative when the bath cools.
    pub temperature_slope: f64,
}

pub fn cooling_estimate(energy_rate_si: f64, heat_capacity: f64) -> Result<CoolingEstimate> {
    if !(heat_capacity > 0.0 && heat_capacity.is_finite()) {
        return Err(Error::invalid("heat_capacity", heat_capacity, "must be finite and > 0"));
    }
    Ok(CoolingEstimate {
        energy_rate_si,
        heat_capacity,
        temperature_slope: energy_rate_si / heat_capacity,
    })
}

/// `ρ_mass · c · V` in J/K.
pub fn heat_capacity(density: f64, specific_heat: f64, volume: f64) -> f64 {
    density * specific_heat * volume
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{dressed_basis, spectral_density};
    use approx::assert_abs_diff_eq;

    fn point(delta: f64, temperature: f64) -> (PhysicalParams, DressedBasis) {
        let p = PhysicalParams {
            delta,
            temperature,
            ..PhysicalParams::default()
        };
        (p, dressed_basis(&p).unwrap())
    }

    #[test]
    fn flux_from_dressed_states_at_zero_temperature() {
        let (p, b) = point(0.6, 0.0);
        assert!(phonon_flux(&b.projector_minus(), &p, &b).unwrap().abs() < 1e-15);
        let upper = phonon_flux(&b.projector_plus(), &p, &b).unwrap();
        let j = spectral_density(b.lambda_gap, &p).unwrap();
        assert_abs_diff_eq!(upper, j * b.sin_2theta().powi(2), epsilon = 1e-14);
    }

    #[test]
    fn thermal_dressed_mixture_has_no_flux() {
        for (delta, t) in [(0.0, 4.0), (1.0, 10.0), (-2.0, 40.0)] {
            let (p, b) = point(delta, t);
            // populations in the ratio p_+/p_- = exp(−βΛ)
            let w = (-boltzmann_exponent(b.lambda_gap, t)).exp();
            let rho = (b.projector_minus() + b.projector_plus() * w) * (1.0 / (1.0 + w));
            assert!(phonon_flux(&rho, &p, &b).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn undriven_decay_relaxes_to_ground() {
        let p = PhysicalParams {
            omega_rabi: 1e-6,
            delta: 1.0,
            alpha: 0.0,
            ..PhysicalParams::default()
        };
        let b = dressed_basis(&p).unwrap();
        let r = steady_state(&p, &b).unwrap();
        assert!(r.unique);
        assert_abs_diff_eq!(r.rho_ss.get(0, 0).re, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn optical_bloch_steady_state() {
        let p = PhysicalParams {
            delta: 0.0,
            alpha: 0.0,
            ..PhysicalParams::default()
        };
        let b = dressed_basis(&p).unwrap();
        let r = steady_state(&p, &b).unwrap();
        // (Ω²/4) / (Γ²/4 + Ω²/2) with Ω = 1, Γ = 0.1
        let expected = 0.25 / (0.0025 + 0.5);
        assert_abs_diff_eq!(r.rho_ss.get(1, 1).re, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(expected, 0.4975, epsilon = 1e-4);
        assert_eq!(r.flux, 0.0);
        assert!(r.rho_ss.is_density_matrix());
    }

    #[test]
    fn no_dissipation_is_an_error() {
        let p = PhysicalParams {
            alpha: 0.0,
            gamma_decay: 0.0,
            ..PhysicalParams::default()
        };
        let b = dressed_basis(&p).unwrap();
        assert!(matches!(steady_state(&p, &b), Err(Error::NoDissipation)));
    }

    #[test]
    fn degenerate_kernel_is_flagged() {
        // σ_z dephasing at Ω ≪ |Δ| barely mixes |g⟩ and |e⟩: the generator's
        // second singular value collapses toward zero
        let p = PhysicalParams {
            omega_rabi: 1e-12,
            delta: 1.0,
            alpha: 0.0,
            gamma_decay: 0.0,
            gamma_dephasing: 0.5,
            ..PhysicalParams::default()
        };
        let b = dressed_basis(&p).unwrap();
        let r = steady_state(&p, &b).unwrap();
        assert!(!r.unique, "gap {}", r.spectral_gap);
    }

    #[test]
    fn energy_rate_examples() {
        assert_eq!(energy_rate_si(0.0, 1.3), 0.0);
        let w = energy_rate_si(-0.02, std::f64::consts::SQRT_2);
        assert!((w + 3.0e-12).abs() < 0.05e-12, "{w}");
        assert_abs_diff_eq!(energy_rate_si(-0.04, 2.0), 2.0 * energy_rate_si(-0.02, 2.0), epsilon = 1e-30);
    }

    #[test]
    fn cooling_examples() {
        let c = cooling_estimate(-3.0e-12, DEFAULT_HEAT_CAPACITY).unwrap();
        assert_abs_diff_eq!(c.temperature_slope, -1.6216, epsilon = 1e-4);
        assert_eq!(cooling_estimate(0.0, DEFAULT_HEAT_CAPACITY).unwrap().temperature_slope, 0.0);
        assert!(cooling_estimate(1.0, 0.0).is_err());
        let capacity = heat_capacity(GAAS_DENSITY, GAAS_SPECIFIC_HEAT, CUBIC_MICROMETRE);
        assert_abs_diff_eq!(capacity, 1.855e-12, epsilon = 1e-18);
    }

    #[test]
    fn boltzmann_expected_limits() {
        use crate::counting::{evolve, initial_state, EvolveOptions};
        let p = PhysicalParams {
            delta: 0.0,
            gamma_decay: 0.0,
            ..PhysicalParams::default()
        };
        let b = dressed_basis(&p).unwrap();
        let traj = evolve(initial_state(), 1.0, &[], &p, &b, &EvolveOptions::default()).unwrap();
        let hot = boltzmann_diagnostic(&traj, &b, 1e9);
        assert_abs_diff_eq!(hot.expected, 1.0, epsilon = 1e-8);
        // βΛ = 1
        let t_unit = units::HBAR_OVER_KB * b.lambda_gap;
        assert_abs_diff_eq!(boltzmann_diagnostic(&traj, &b, t_unit).expected, 0.367_879_441_171_442_3, epsilon = 1e-15);
        assert!(hot.measured.is_some());
    }
}
