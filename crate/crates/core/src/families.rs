//! Closed-form 2x2 families: the complex-symmetric family, the general
//! five-parameter family with `T = ⋆`, and its images under a general
//! time-reversal `T = τ⋆`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::antilinear::{unitary_sqrt_of_tau, wrap_angle, AntilinearOperator, TimeReversalParams};
use crate::error::{Error, Result};
use crate::metric::MetricOperator;
use crate::pauli::{axis_exp, levi_civita, sigma, sigma1, sigma3};
use crate::spectral::BiorthonormalSystem;
use crate::CMatrix;

const EXCEPTIONAL_MARGIN: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[a, b, cc, d])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricFamilyParams {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub phi: f64,
}

impl SymmetricFamilyParams {
    pub fn new(r: f64, s: f64, t: f64, phi: f64) -> Self {
        Self {
            r,
            s,
            t,
            phi: wrap_angle(phi),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.s.abs() < self.t.abs()
    }

    /// `α = arcsin(s/t)`, defined when `|s| ≤ |t|` and `t ≠ 0`.
    pub fn alpha(&self) -> Option<f64> {
        if self.t == 0.0 || self.s.abs() > self.t.abs() {
            return None;
        }
        Some((self.s / self.t).asin())
    }

    /// Same matrix with `t ≥ 0`: `H(r, s, t, φ) = H(r, -s, -t, φ + π)`.
    pub fn canonical(&self) -> Self {
        if self.t < 0.0 {
            Self::new(self.r, -self.s, -self.t, self.phi + PI)
        } else {
            Self::new(self.r, self.s, self.t, self.phi)
        }
    }

    fn closed_form(&self) -> Result<(Self, f64)> {
        let p = self.canonical();
        if !(p.t > 0.0) || p.s.abs() >= p.t * (1.0 - EXCEPTIONAL_MARGIN) {
            return Err(Error::ExceptionalPoint);
        }
        Ok((p, (p.s / p.t).asin()))
    }
}

pub fn symmetric_hamiltonian(p: &SymmetricFamilyParams) -> CMatrix {
    let (sin, cos) = p.phi.sin_cos();
    let off = c(p.t * sin, p.s * cos);
    m2(c(p.r + p.t * cos, -p.s * sin), off, off, c(p.r - p.t * cos, p.s * sin))
}

/// `(a₊, b₊, a₋, b₋)` in half-angle form, which stays finite as `α → 0`.
fn eigen_coefficients(alpha: f64) -> (f64, f64, f64, f64) {
    let root = alpha.cos().sqrt();
    let (sh, ch) = (alpha / 2.0).sin_cos();
    let sign = if alpha < 0.0 { -1.0 } else { 1.0 };
    (sign * ch / root, -sh.abs() / root, sh / root, -ch / root)
}

/// Eigenvectors `ψ±` with the family's own normalization and partners `φₙ = n ψₙ*`.
/// Column 0 belongs to `E₊ = r + √(t² - s²)`.
pub fn symmetric_eigensystem(p: &SymmetricFamilyParams) -> Result<BiorthonormalSystem> {
    let (p, alpha) = p.closed_form()?;
    let (ap, bp, am, bm) = eigen_coefficients(alpha);
    let (sh, ch) = (p.phi / 2.0).sin_cos();
    let column = |a: f64, b: f64| [c(a * ch, b * sh), c(a * sh, -b * ch)];
    let [p0, p1] = column(ap, bp);
    let [m0, m1] = column(am, bm);
    let psi = m2(p0, m0, p1, m1);
    let mut phi = psi.map(|z| z.conj());
    phi.column_mut(1).neg_mut();
    let radical = p.t * alpha.cos();
    BiorthonormalSystem::from_parts(psi, phi, vec![p.r + radical, p.r - radical])
}

/// `𝒫 = cos φ σ₃ + sin φ σ₁`.
pub fn parity_from_angle(phi: f64) -> CMatrix {
    let (sin, cos) = phi.sin_cos();
    sigma3() * c(cos, 0.0) + sigma1() * c(sin, 0.0)
}

/// `e^{-iθσᵢ/2} σⱼ e^{iθσᵢ/2}`.
pub fn pauli_rotation(i: usize, theta: f64, j: usize) -> Result<CMatrix> {
    if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::InvalidAxis { i, j });
    }
    Ok(axis_exp(-theta / 2.0, i) * sigma(j) * axis_exp(theta / 2.0, i))
}

/// `cos θ σⱼ + sin θ Σₖ εᵢⱼₖ σₖ`.
pub fn pauli_rotation_closed_form(i: usize, theta: f64, j: usize) -> Result<CMatrix> {
    if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::InvalidAxis { i, j });
    }
    let mut out = sigma(j) * c(theta.cos(), 0.0);
    for k in 1..=3 {
        out += sigma(k) * c(theta.sin() * levi_civita(i, j, k), 0.0);
    }
    Ok(out)
}

/// The closed-form operators attached to a family member.
#[derive(Debug, Clone)]
pub struct FamilyOperators {
    pub eta_plus: CMatrix,
    pub parity: CMatrix,
    pub charge: CMatrix,
    pub rho_plus: CMatrix,
    pub rho_plus_inv: CMatrix,
    /// `h = ρ₊ H ρ₊⁻¹`
    pub hermitian: CMatrix,
}

impl FamilyOperators {
    pub fn metric(&self) -> Result<MetricOperator> {
        MetricOperator::from_parts(self.eta_plus.clone(), self.rho_plus.clone(), self.rho_plus_inv.clone())
    }

    /// `W X W†` applied to every operator, for a unitary `W`.
    fn conjugated(&self, w: &CMatrix) -> Self {
        let wd = w.adjoint();
        let f = |m: &CMatrix| w * m * &wd;
        Self {
            eta_plus: f(&self.eta_plus),
            parity: f(&self.parity),
            charge: f(&self.charge),
            rho_plus: f(&self.rho_plus),
            rho_plus_inv: f(&self.rho_plus_inv),
            hermitian: f(&self.hermitian),
        }
    }
}

/// `(ρ₊, ρ₊⁻¹)` at angle `α`; `det ρ₊ = 1`.
fn rho_pair(alpha: f64) -> (CMatrix, CMatrix) {
    let (sec, tan) = (1.0 / alpha.cos(), alpha.tan());
    let (lo, hi) = ((sec - tan).sqrt(), (sec + tan).sqrt());
    let (rp, rm) = ((lo + hi) / 2.0, (lo - hi) / 2.0);
    (
        m2(c(rp, 0.0), c(0.0, -rm), c(0.0, rm), c(rp, 0.0)),
        m2(c(rp, 0.0), c(0.0, rm), c(0.0, -rm), c(rp, 0.0)),
    )
}

pub fn symmetric_operators(p: &SymmetricFamilyParams) -> Result<FamilyOperators> {
    let (p, alpha) = p.closed_form()?;
    let (sec, tan) = (1.0 / alpha.cos(), alpha.tan());
    let (sin, cos) = p.phi.sin_cos();
    let eta_plus = m2(c(sec, 0.0), c(0.0, tan), c(0.0, -tan), c(sec, 0.0));
    let parity = parity_from_angle(p.phi);
    let off = c(sec * sin, tan * cos);
    let charge = m2(c(sec * cos, -tan * sin), off, off, c(-sec * cos, tan * sin));
    let (rho_plus, rho_plus_inv) = rho_pair(alpha);
    let hermitian = CMatrix::identity(2, 2) * c(p.r, 0.0) + &parity * c(p.t * alpha.cos(), 0.0);
    Ok(FamilyOperators {
        eta_plus,
        parity,
        charge,
        rho_plus,
        rho_plus_inv,
        hermitian,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralFamilyParams {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub phi: f64,
}

impl GeneralFamilyParams {
    pub fn new(r: f64, s: f64, t: f64, u: f64, phi: f64) -> Self {
        Self {
            r,
            s,
            t,
            u,
            phi: wrap_angle(phi),
        }
    }

    /// `t' = √(t² + u²)`
    pub fn t_prime(&self) -> f64 {
        self.t.hypot(self.u)
    }

    /// `β ∈ [0, 2π)` with `sin β = u/t'`, `cos β = t/t'`.
    pub fn beta(&self) -> f64 {
        self.u.atan2(self.t).rem_euclid(TAU)
    }

    pub fn is_exact(&self) -> bool {
        self.s.abs() < self.t_prime()
    }

    /// The symmetric member `(r, s, t', φ)` it reduces to.
    pub fn symmetric_part(&self) -> SymmetricFamilyParams {
        SymmetricFamilyParams::new(self.r, self.s, self.t_prime(), self.phi)
    }
}

pub fn general_hamiltonian(p: &GeneralFamilyParams) -> CMatrix {
    let (sin, cos) = p.phi.sin_cos();
    m2(
        c(p.r + p.t * cos, -p.s * sin),
        c(p.t * sin, p.s * cos - p.u),
        c(p.t * sin, p.s * cos + p.u),
        c(p.r - p.t * cos, p.s * sin),
    )
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub h_prime: CMatrix,
    /// `H = U₁ H' U₁⁻¹`
    pub u1: CMatrix,
}

fn u1_matrix(p: &GeneralFamilyParams) -> CMatrix {
    axis_exp(-p.phi / 2.0, 2) * axis_exp(p.beta() / 2.0, 1) * axis_exp(p.phi / 2.0, 2)
}

pub fn reduce_general_to_symmetric(p: &GeneralFamilyParams) -> Result<Reduction> {
    if p.t == 0.0 && p.u == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    Ok(Reduction {
        h_prime: symmetric_hamiltonian(&p.symmetric_part()),
        u1: u1_matrix(p),
    })
}

#[derive(Debug, Clone)]
pub struct HermitianEquivalence {
    /// `h' = r I + √(t'² - s²) 𝒫(φ)`
    pub h_prime_hermitian: CMatrix,
    /// `H = U₂ h' U₂⁻¹` with `U₂ = U₁ ρ'₊⁻¹`
    pub u2: CMatrix,
}

fn exact_general(p: &GeneralFamilyParams) -> Result<()> {
    if !p.is_exact() {
        return Err(Error::BrokenSymmetryParams);
    }
    if p.t == 0.0 && p.u == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    Ok(())
}

pub fn hermitize_equivalence(p: &GeneralFamilyParams) -> Result<HermitianEquivalence> {
    exact_general(p)?;
    let ops = symmetric_operators(&p.symmetric_part())?;
    Ok(HermitianEquivalence {
        h_prime_hermitian: ops.hermitian,
        u2: u1_matrix(p) * ops.rho_plus_inv,
    })
}

/// Operators of the general family, carried over from its symmetric part by `U₁`.
pub fn general_operators(p: &GeneralFamilyParams) -> Result<FamilyOperators> {
    exact_general(p)?;
    Ok(symmetric_operators(&p.symmetric_part())?.conjugated(&u1_matrix(p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralTFamilyParams {
    pub base: GeneralFamilyParams,
    pub tparams: TimeReversalParams,
}

#[derive(Debug, Clone)]
pub struct GeneralTSystem {
    /// `H = U Ȟ U⁻¹`
    pub hamiltonian: CMatrix,
    /// `P = U P̌ U⁻¹`
    pub parity: CMatrix,
    /// `T = U² ⋆`
    pub time_reversal: AntilinearOperator,
    pub u: CMatrix,
}

/// Builds `H`, `P`, `T` without checking the base exactness predicate.
pub fn general_t_system(p: &GeneralTFamilyParams) -> GeneralTSystem {
    let u = unitary_sqrt_of_tau(&p.tparams);
    let ud = u.adjoint();
    let hamiltonian = &u * general_hamiltonian(&p.base) * &ud;
    let parity = &u * parity_from_angle(p.base.phi) * &ud;
    let time_reversal = AntilinearOperator::new(&u * &u).expect("finite unitary");
    GeneralTSystem {
        hamiltonian,
        parity,
        time_reversal,
        u,
    }
}

pub fn general_t_hamiltonian(p: &GeneralTFamilyParams) -> Result<GeneralTSystem> {
    if !p.base.is_exact() {
        return Err(Error::BrokenSymmetryParams);
    }
    Ok(general_t_system(p))
}

/// Operators of the general-T family, carried over by `U U₁`.
pub fn general_t_operators(p: &GeneralTFamilyParams) -> Result<FamilyOperators> {
    exact_general(&p.base)?;
    let w = unitary_sqrt_of_tau(&p.tparams) * u1_matrix(&p.base);
    Ok(symmetric_operators(&p.base.symmetric_part())?.conjugated(&w))
}
