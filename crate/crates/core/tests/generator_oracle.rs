// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! Cross-checks of the generator machinery against independent routes.

mod common;

use common::{direct_rhs, max_diff, random_density, random_hermitian, random_matrix, rng};
use nalgebra::Complex;
use phonon_pump::algebra::{build_generator, devectorize, vectorize, CMatrix2, JumpTerm};
use phonon_pump::counting::{
    evolve, generator_apply, initial_state, CountingDynamics, EvolveOptions, NumberResolvedState,
    Rk4Scratch,
};
use phonon_pump::model::{dressed_basis, hamiltonian_matrix, PhysicalParams};
use phonon_pump::observables::{reduced_density, reduced_jumps};
use rand::Rng;

#[test]
fn vectorized_generator_matches_direct_assembly() {
    let mut r = rng(7);
    for _ in 0..100 {
        let h = random_hermitian(&mut r);
        let jumps = [
            JumpTerm::new(random_matrix(&mut r), r.gen_range(0.0..2.0)).unwrap(),
            JumpTerm::new(random_matrix(&mut r), r.gen_range(0.0..2.0)).unwrap(),
            JumpTerm::new(CMatrix2::sigma_minus(), 0.3).unwrap(),
        ];
        let rho = random_matrix(&mut r);
        let g = build_generator(&jumps, &h);
        let via_g = devectorize(&g.apply(&vectorize(&rho)));
        assert!(max_diff(&via_g, &direct_rhs(&h, &jumps, &rho)) < 1e-12);
    }
}

#[test]
fn counting_generator_conserves_total_trace() {
    let mut r = rng(11);
    for _ in 0..50 {
        let p = PhysicalParams {
            omega_rabi: r.gen_range(0.2..2.0),
            delta: r.gen_range(-3.0..3.0),
            temperature: r.gen_range(0.0..40.0),
            gamma_decay: r.gen_range(0.0..0.5),
            gamma_dephasing: r.gen_range(0.0..0.5),
            ..PhysicalParams::default()
        };
        let b = dressed_basis(&p).unwrap();
        // random ladder over [−3, 3] whose edge blocks are empty, so nothing
        // leaks across the window
        let mut blocks: Vec<CMatrix2> = (0..7).map(|_| random_density(&mut r)).collect();
        blocks[0] = CMatrix2::ZERO;
        blocks[6] = CMatrix2::ZERO;
        let total: f64 = blocks.iter().map(|b| b.trace().re).sum();
        for blk in &mut blocks {
            *blk = *blk * (1.0 / total);
        }
        let state = NumberResolvedState {
            time: 0.0,
            m_min: -3,
            blocks,
            window_tolerance: 1e-12,
        };
        let d = generator_apply(&state, &p, &b).unwrap();
        let trace_rate: f64 = d.iter().map(|x| x.trace().re).sum();
        assert!(trace_rate.abs() < 1e-12, "{trace_rate}");
        // the block-summed derivative is the unresolved master equation
        let summed = d.iter().fold(CMatrix2::ZERO, |a, x| a + *x);
        let direct = direct_rhs(&hamiltonian_matrix(&p), &reduced_jumps(&p, &b).unwrap(), &state.reduced());
        assert!(max_diff(&summed, &direct) < 1e-12);
    }
}

/// `exp(G t)` applied to `vec(|g⟩⟨g|)` via nalgebra's Padé exponential.
fn reduced_by_exponential(p: &PhysicalParams, t: f64) -> CMatrix2 {
    let b = dressed_basis(p).unwrap();
    let g = build_generator(&reduced_jumps(p, &b).unwrap(), &hamiltonian_matrix(p));
    let propagator = (g.0 * Complex::new(t, 0.0)).exp();
    devectorize(&(propagator * vectorize(&CMatrix2::from_real(1.0, 0.0, 0.0, 0.0))))
}

#[test]
fn summed_ladder_equals_unresolved_evolution() {
    let params = [
        PhysicalParams::default(),
        PhysicalParams {
            delta: -0.7,
            temperature: 25.0,
            gamma_dephasing: 0.2,
            ..PhysicalParams::default()
        },
        PhysicalParams {
            delta: 0.0,
            gamma_decay: 0.0,
            ..PhysicalParams::default()
        },
    ];
    for p in params {
        let b = dressed_basis(&p).unwrap();
        let times = [0.5, 3.0, 12.0, 30.0];
        let traj = evolve(initial_state(), 30.0, &times, &p, &b, &EvolveOptions::default()).unwrap();
        for rec in &traj.records {
            let oracle = reduced_by_exponential(&p, rec.time);
            let diff = max_diff(&rec.reduced, &oracle);
            assert!(diff < 1e-9, "{p:?} t = {}: {diff:e}", rec.time);
        }
        assert!(max_diff(&reduced_density(&traj.final_state), &reduced_by_exponential(&p, 30.0)) < 1e-9);
    }
}

fn advance(dynamics: &CountingDynamics, start: &NumberResolvedState, h: f64, steps: usize) -> NumberResolvedState {
    let mut s = start.clone();
    let mut scratch = Rk4Scratch::default();
    for _ in 0..steps {
        dynamics.step_rk4(&mut s, h, &mut scratch);
    }
    s
}

fn ladder_distance(a: &NumberResolvedState, b: &NumberResolvedState) -> f64 {
    a.blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| max_diff(x, y))
        .fold(0.0, f64::max)
}

#[test]
fn rk4_is_fourth_order() {
    let p = PhysicalParams {
        temperature: 15.0,
        gamma_dephasing: 0.05,
        ..PhysicalParams::default()
    };
    let b = dressed_basis(&p).unwrap();
    let dynamics = CountingDynamics::new(&p, &b).unwrap();
    let mut start = initial_state();
    start.blocks = vec![CMatrix2::ZERO; 9];
    start.m_min = -4;
    start.blocks[4] = CMatrix2::from_real(1.0, 0.0, 0.0, 0.0);

    // Richardson: successive differences over a fixed interval shrink by 2^4
    let span = 2.0;
    let coarse = advance(&dynamics, &start, 0.2, 10);
    let mid = advance(&dynamics, &start, 0.1, 20);
    let fine = advance(&dynamics, &start, 0.05, 40);
    let ratio = ladder_distance(&coarse, &mid) / ladder_distance(&mid, &fine);
    assert!((13.0..19.0).contains(&ratio), "global ratio {ratio}");
    assert!((coarse.time - span).abs() < 1e-12);

    // single step against two half steps: local error is O(h^5)
    let e = |h: f64| ladder_distance(&advance(&dynamics, &start, h, 1), &advance(&dynamics, &start, h / 2.0, 2));
    let local = e(0.2) / e(0.1);
    assert!((24.0..40.0).contains(&local), "local ratio {local}");
}

#[test]
fn closed_system_rabi_oscillation() {
    let p = PhysicalParams {
        delta: 0.0,
        alpha: 0.0,
        gamma_decay: 0.0,
        ..PhysicalParams::default()
    };
    let b = dressed_basis(&p).unwrap();
    let dynamics = CountingDynamics::new(&p, &b).unwrap();
    let mut s = initial_state();
    let mut scratch = Rk4Scratch::default();
    let h = 0.001;
    for k in 1..=10_000 {
        dynamics.step_rk4(&mut s, h, &mut scratch);
        let t = k as f64 * h;
        if k % 100 == 0 {
            let exact = (0.5 * p.omega_rabi * t).sin().powi(2);
            assert!((s.reduced().get(1, 1).re - exact).abs() < 1e-8, "t = {t}");
        }
    }
    assert!((s.total_trace() - 1.0).abs() < 1e-10);
    assert!(s.reduced().get(0, 1).norm() > 0.0);
}
