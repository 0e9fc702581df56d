// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense 2×2 complex algebra for the exciton two-level system.
//!
//! Basis order is fixed as `(|g⟩, |e⟩)` everywhere: index 0 is the crystal
//! ground state, index 1 the single exciton. With this ordering
//! `σ_z = |e⟩⟨e| − |g⟩⟨g| = diag(−1, +1)`; flipping it would flip the sign of
//! the detuning axis.
//!
//! Superoperators act on column-stacked vectors
//! `vec(ρ) = (ρ_gg, ρ_eg, ρ_ge, ρ_ee)`, so that `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix, `self.0[row][col]`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct CMatrix2(pub [[Complex64; 2]; 2]);

impl fmt::Debug for CMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl CMatrix2 {
    pub const ZERO: Self = Self([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);

    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([[a, b], [c, d]])
    }

    pub const fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self([
            [Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
            [Complex64::new(c, 0.0), Complex64::new(d, 0.0)],
        ])
    }

    /// `|e⟩⟨e| − |g⟩⟨g|`.
    pub const fn sigma_z() -> Self {
        Self::from_real(-1.0, 0.0, 0.0, 1.0)
    }

    /// `|g⟩⟨e| + |e⟩⟨g|`.
    pub const fn sigma_x() -> Self {
        Self::from_real(0.0, 1.0, 1.0, 0.0)
    }

    /// `i|g⟩⟨e| − i|e⟩⟨g|`, the pseudo-spin partner of the σ_z above, so
    /// that `[σ_z, σ_x] = 2iσ_y`.
    pub const fn sigma_y() -> Self {
        Self([[ZERO, I], [Complex64::new(0.0, -1.0), ZERO]])
    }

    /// Lowering operator `σ_− = |g⟩⟨e|` (radiative decay of the exciton).
    pub const fn sigma_minus() -> Self {
        Self::from_real(0.0, 1.0, 0.0, 0.0)
    }

    pub const fn sigma_plus() -> Self {
        Self::from_real(0.0, 0.0, 1.0, 0.0)
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: [Complex64; 2], b: [Complex64; 2]) -> Self {
        Self([
            [a[0] * b[0].conj(), a[0] * b[1].conj()],
            [a[1] * b[0].conj(), a[1] * b[1].conj()],
        ])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn dagger(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self([[a.conj(), c.conj()], [b.conj(), d.conj()]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, psi: [Complex64; 2]) -> Complex64 {
        let mut acc = ZERO;
        for r in 0..2 {
            for c in 0..2 {
                acc += psi[r].conj() * self.0[r][c] * psi[c];
            }
        }
        acc
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self([[f(a), f(b)], [f(c), f(d)]])
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |A − A†|` entrywise.
    pub fn hermiticity_residual(&self) -> f64 {
        (*self - self.dagger()).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// Eigenvalues (ascending) of the Hermitian part `(A + A†)/2`.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = (self.0[0][1] + self.0[1][0].conj()) * 0.5;
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    /// Checks the density-matrix invariants: Hermitian and real trace within
    /// `1e-12`, eigenvalues no lower than `−1e-9`.
    pub fn is_density_matrix(&self) -> bool {
        self.is_hermitian(1e-12)
            && self.trace().im.abs() <= 1e-12
            && self.hermitian_eigenvalues()[0] >= -1e-9
    }
}

impl Add for CMatrix2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        out += rhs;
        out
    }
}

impl AddAssign for CMatrix2 {
    fn add_assign(&mut self, rhs: Self) {
        for r in 0..2 {
            for c in 0..2 {
                self.0[r][c] += rhs.0[r][c];
            }
        }
    }
}

impl Sub for CMatrix2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        out -= rhs;
        out
    }
}

impl SubAssign for CMatrix2 {
    fn sub_assign(&mut self, rhs: Self) {
        for r in 0..2 {
            for c in 0..2 {
                self.0[r][c] -= rhs.0[r][c];
            }
        }
    }
}

impl Neg for CMatrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl Mul for CMatrix2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        Self([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<Complex64> for CMatrix2 {
    type Output = Self;
    fn mul(self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }
}

impl Mul<f64> for CMatrix2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

pub fn dagger(a: &CMatrix2) -> CMatrix2 {
    a.dagger()
}

pub fn commutator(a: &CMatrix2, b: &CMatrix2) -> CMatrix2 {
    *a * *b - *b * *a
}

pub fn anticommutator(a: &CMatrix2, b: &CMatrix2) -> CMatrix2 {
    *a * *b + *b * *a
}

/// A Lindblad channel: jump operator `L` with rate `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpTerm {
    pub operator: CMatrix2,
    pub rate: f64,
}

impl JumpTerm {
    pub fn new(operator: CMatrix2, rate: f64) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(Error::invalid("rate", rate, "must be finite and >= 0"));
        }
        Ok(Self { operator, rate })
    }
}

/// `γ (LρL† − ½{L†L, ρ})`.
pub fn dissipator_apply(l: &CMatrix2, gamma: f64, rho: &CMatrix2) -> Result<CMatrix2> {
    if !(gamma >= 0.0) {
        return Err(Error::invalid("gamma", gamma, "dissipator rate must be >= 0"));
    }
    Ok(dissipator_unchecked(l, gamma, rho))
}

#[inline]
pub(crate) fn dissipator_unchecked(l: &CMatrix2, gamma: f64, rho: &CMatrix2) -> CMatrix2 {
    if gamma == 0.0 {
        return CMatrix2::ZERO;
    }
    let ld = l.dagger();
    let ldl = ld * *l;
    (*l * *rho * ld - anticommutator(&ldl, rho).scale(0.5)).scale(gamma)
}

/// Column-stacked vector of a 2×2 matrix.
pub type Vec4 = Vector4<Complex64>;

pub fn vectorize(rho: &CMatrix2) -> Vec4 {
    Vec4::new(rho.0[0][0], rho.0[1][0], rho.0[0][1], rho.0[1][1])
}

pub fn devectorize(v: &Vec4) -> CMatrix2 {
    CMatrix2([[v[0], v[2]], [v[1], v[3]]])
}

/// 4×4 matrix of `X ↦ AXB` in the column-stacked representation.
fn sandwich(a: &CMatrix2, b: &CMatrix2) -> Matrix4<Complex64> {
    // (Bᵀ ⊗ A)[(2j + i), (2l + k)] = B[l][j] · A[i][k]
    Matrix4::from_fn(|row, col| {
        let (j, i) = (row / 2, row % 2);
        let (l, k) = (col / 2, col % 2);
        b.0[l][j] * a.0[i][k]
    })
}

/// Vectorized Lindblad generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator(pub Matrix4<Complex64>);

/// Null direction of a [`Generator`] together with the singular values used
/// to judge its uniqueness.
#[derive(Debug, Clone, Copy)]
pub struct Kernel {
    pub vector: Vec4,
    pub smallest_singular_value: f64,
    pub second_singular_value: f64,
}

impl Generator {
    pub fn apply(&self, v: &Vec4) -> Vec4 {
        self.0 * v
    }

    pub fn apply_to(&self, rho: &CMatrix2) -> CMatrix2 {
        devectorize(&self.apply(&vectorize(rho)))
    }

    /// Right singular vector belonging to the smallest singular value.
    pub fn kernel(&self) -> Kernel {
        let svd = self.0.svd(false, true);
        let v_t = svd.v_t.expect("v_t requested");
        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
        let row = v_t.row(order[0]);
        Kernel {
            vector: Vec4::new(row[0].conj(), row[1].conj(), row[2].conj(), row[3].conj()),
            smallest_singular_value: svd.singular_values[order[0]],
            second_singular_value: svd.singular_values[order[1]],
        }
    }
}

/// Generator `G` with `G·vec(ρ) = vec(−i[H, ρ] + Σ_k γ_k D[L_k]ρ)`.
pub fn build_generator(jumps: &[JumpTerm], hamiltonian: &CMatrix2) -> Generator {
    let id = CMatrix2::IDENTITY;
    let mut g = (sandwich(hamiltonian, &id) - sandwich(&id, hamiltonian)) * (-I);
    for jump in jumps {
        if jump.rate == 0.0 {
            continue;
        }
        let l = &jump.operator;
        let ld = l.dagger();
        let ldl = ld * *l;
        let term = sandwich(l, &ld)
            - sandwich(&ldl, &id) * Complex64::new(0.5, 0.0)
            - sandwich(&id, &ldl) * Complex64::new(0.5, 0.0);
        g += term * Complex64::new(jump.rate, 0.0);
    }
    Generator(g)
}
