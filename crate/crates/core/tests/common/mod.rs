// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use num_complex::Complex64;
use phonon_pump::algebra::{CMatrix2, JumpTerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng) -> CMatrix2 {
    let mut z = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    CMatrix2::new(z(), z(), z(), z())
}

pub fn random_hermitian(rng: &mut impl Rng) -> CMatrix2 {
    let a = random_matrix(rng);
    (a + a.dagger()).scale(0.5)
}

/// `A A† / tr(A A†)`: a random full-rank density matrix.
pub fn random_density(rng: &mut impl Rng) -> CMatrix2 {
    let a = random_matrix(rng);
    let p = a * a.dagger();
    p * (1.0 / p.trace().re)
}

/// Element-by-element Lindblad right-hand side, written out with explicit
/// index sums and no shared helpers from the crate.
pub fn direct_rhs(h: &CMatrix2, jumps: &[JumpTerm], rho: &CMatrix2) -> CMatrix2 {
    let i = Complex64::new(0.0, 1.0);
    let m = |a: &CMatrix2, r: usize, c: usize| a.0[r][c];
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                acc += -i * (m(h, r, k) * m(rho, k, c) - m(rho, r, k) * m(h, k, c));
            }
            for j in jumps {
                let l = &j.operator;
                let ld = |a: usize, b: usize| l.0[b][a].conj();
                let mut sandwich = Complex64::new(0.0, 0.0);
                let mut left = Complex64::new(0.0, 0.0);
                let mut right = Complex64::new(0.0, 0.0);
                for a in 0..2 {
                    for b in 0..2 {
                        sandwich += m(l, r, a) * m(rho, a, b) * ld(b, c);
                        left += ld(r, a) * m(l, a, b) * m(rho, b, c);
                        right += m(rho, r, a) * ld(a, b) * m(l, b, c);
                    }
                }
                acc += j.rate * (sandwich - 0.5 * left - 0.5 * right);
            }
            out[r][c] = acc;
        }
    }
    CMatrix2(out)
}

pub fn max_diff(a: &CMatrix2, b: &CMatrix2) -> f64 {
    (*a - *b).max_abs()
}
