//! Antilinear operators `T = τ⋆`, Hermitian antilinear involutions, and
//! PT-symmetry / exactness tests.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli;
use crate::spectral::{
    check_square_finite, check_vector, eigendecompose_with, max_abs_diff, relative, BiorthonormalSystem, SpectrumClass,
};
use crate::tolerance::Tolerances;
use crate::{CMatrix, CVector};

/// An antilinear map stored by its linear part: `T v = τ v*`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearOperator {
    tau: CMatrix,
}

impl AntilinearOperator {
    pub fn new(tau: CMatrix) -> Result<Self> {
        check_square_finite(&tau)?;
        Ok(Self { tau })
    }

    /// Plain complex conjugation `⋆`.
    pub fn conjugation(dim: usize) -> Self {
        Self {
            tau: CMatrix::identity(dim, dim),
        }
    }

    pub fn tau(&self) -> &CMatrix {
        &self.tau
    }

    pub fn dim(&self) -> usize {
        self.tau.nrows()
    }

    /// `A ∘ (τ⋆) = (Aτ)⋆`.
    pub fn after_linear(&self, a: &CMatrix) -> Result<Self> {
        if a.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.ncols(),
            });
        }
        Self::new(a * &self.tau)
    }

    /// `(τ⋆) ∘ A = (τA*)⋆`.
    pub fn before_linear(&self, a: &CMatrix) -> Result<Self> {
        if a.nrows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.nrows(),
            });
        }
        Self::new(&self.tau * a.map(|z| z.conj()))
    }

    /// `(τ₁⋆) ∘ (τ₂⋆) = τ₁τ₂*`, a linear map.
    pub fn compose(&self, other: &AntilinearOperator) -> CMatrix {
        &self.tau * other.tau.map(|z| z.conj())
    }

    pub fn apply(&self, psi: &CVector) -> Result<CVector> {
        apply_antilinear(self, psi)
    }
}

pub fn apply_antilinear(t: &AntilinearOperator, psi: &CVector) -> Result<CVector> {
    check_vector(psi, t.dim())?;
    Ok(t.tau() * psi.map(|z| z.conj()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvolutionCheck {
    pub is_hermitian_involution: bool,
    /// `max |τ - τᵀ|`
    pub symmetry_residual: f64,
    /// `max |τ†τ - I|`
    pub unitarity_residual: f64,
}

/// `T = τ⋆` is a Hermitian antilinear involution iff `τ` is symmetric and unitary.
pub fn is_hermitian_antilinear_involution(t: &AntilinearOperator) -> InvolutionCheck {
    let tau = t.tau();
    let n = t.dim();
    let symmetry_residual = max_abs_diff(tau, &tau.transpose());
    let unitarity_residual = max_abs_diff(&(tau.adjoint() * tau), &CMatrix::identity(n, n));
    InvolutionCheck {
        is_hermitian_involution: symmetry_residual <= 1e-10 && unitarity_residual <= 1e-10,
        symmetry_residual,
        unitarity_residual,
    }
}

/// Angles of the general 2x2 time-reversal operator. Constructors reduce them into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeReversalParams {
    pub gamma: f64,
    pub xi: f64,
    pub zeta: f64,
}

pub(crate) fn wrap_angle(x: f64) -> f64 {
    x.rem_euclid(std::f64::consts::TAU)
}

impl TimeReversalParams {
    pub fn new(gamma: f64, xi: f64, zeta: f64) -> Self {
        Self {
            gamma: wrap_angle(gamma),
            xi: wrap_angle(xi),
            zeta: wrap_angle(zeta),
        }
    }

    fn axis(&self) -> [f64; 3] {
        [self.zeta.cos(), 0.0, self.zeta.sin()]
    }
}

/// `τ = e^{iγ}[cos ξ I + i sin ξ (cos ζ σ₁ + sin ζ σ₃)]`.
pub fn make_time_reversal(p: &TimeReversalParams) -> AntilinearOperator {
    let tau = pauli::su2_exp(p.xi, p.axis()) * Complex64::from_polar(1.0, p.gamma);
    AntilinearOperator { tau }
}

/// Symmetric unitary `U = e^{iγ/2} e^{iξ(cos ζ σ₁ + sin ζ σ₃)/2}` with `U² = τ`.
pub fn unitary_sqrt_of_tau(p: &TimeReversalParams) -> CMatrix {
    pauli::su2_exp(p.xi / 2.0, p.axis()) * Complex64::from_polar(1.0, p.gamma / 2.0)
}

/// `||H (Pτ) - (Pτ) H*||_F / ||H||_F`, the linear-part form of `[H, PT] = 0`.
pub fn check_pt_symmetry(h: &CMatrix, p: &CMatrix, t: &AntilinearOperator) -> Result<f64> {
    let n = check_square_finite(h)?;
    for m in [p, t.tau()] {
        if check_square_finite(m)? != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.nrows(),
            });
        }
    }
    let sv = p.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if !(max > 0.0) || !(min > 1e-13 * max) {
        return Err(Error::SingularParity);
    }
    let pt = p * t.tau();
    Ok(relative(&(h * &pt - &pt * h.map(|z| z.conj())), h.norm()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactnessFailure {
    ComplexEigenvalues,
    NotDiagonalizable,
    None,
}

#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub exact: bool,
    /// Unit-norm eigenvectors with `PTψ = ψ`, as columns; empty unless `exact`.
    pub fixed_eigenvectors: CMatrix,
    /// Eigenvalues matching the columns of `fixed_eigenvectors`.
    pub eigenvalues: Vec<f64>,
    pub failure_reason: ExactnessFailure,
}

pub fn check_exactness(h: &CMatrix, p: &CMatrix, t: &AntilinearOperator) -> Result<ExactnessReport> {
    check_exactness_with(h, p, t, &Tolerances::default())
}

/// Decides exactness of the PT-symmetry from the spectrum and, when exact,
/// returns an eigenbasis of PT-invariant vectors.
pub fn check_exactness_with(
    h: &CMatrix,
    p: &CMatrix,
    t: &AntilinearOperator,
    tol: &Tolerances,
) -> Result<ExactnessReport> {
    let residual = check_pt_symmetry(h, p, t)?;
    if residual > tol.symmetry {
        return Err(Error::NotPTSymmetric { residual });
    }
    let n = h.nrows();
    let sd = eigendecompose_with(h, tol)?;
    let failure = match sd.classification {
        SpectrumClass::RealDiagonalizable => ExactnessFailure::None,
        SpectrumClass::NearDefective => ExactnessFailure::NotDiagonalizable,
        SpectrumClass::ConjugatePairs | SpectrumClass::UnpairedComplex => ExactnessFailure::ComplexEigenvalues,
    };
    if failure != ExactnessFailure::None {
        return Ok(ExactnessReport {
            exact: false,
            fixed_eigenvectors: CMatrix::zeros(n, 0),
            eigenvalues: Vec::new(),
            failure_reason: failure,
        });
    }

    let pt = AntilinearOperator { tau: p * t.tau() };
    let mut fixed = CMatrix::zeros(n, n);
    for cluster in &sd.clusters {
        if cluster.len() == 1 {
            let k = cluster.start;
            let psi = sd.right_eigenvectors.column(k).into_owned();
            let chi = apply_antilinear(&pt, &psi)?;
            let ratio = psi.dotc(&chi) / psi.dotc(&psi);
            let v = psi * Complex64::from_polar(1.0, ratio.arg() / 2.0);
            fixed.set_column(k, &v);
        } else {
            let basis: Vec<CVector> = cluster
                .clone()
                .map(|k| sd.right_eigenvectors.column(k).into_owned())
                .collect();
            for (offset, v) in pt_fixed_basis(&pt, &basis)?.into_iter().enumerate() {
                fixed.set_column(cluster.start + offset, &v);
            }
        }
    }

    let mut worst = 0.0_f64;
    for k in 0..n {
        let v = fixed.column(k).into_owned();
        worst = worst.max((apply_antilinear(&pt, &v)? - &v).norm() / v.norm());
    }
    if worst > tol.fixed_point {
        return Err(Error::FixedPointFailure { residual: worst });
    }

    Ok(ExactnessReport {
        exact: true,
        fixed_eigenvectors: fixed,
        eigenvalues: sd.eigenvalues.iter().map(|z| z.re).collect(),
        failure_reason: ExactnessFailure::None,
    })
}

/// PT-invariant basis of a degenerate eigenspace: greedily picks independent
/// vectors among `v + PTv` and `i(v - PTv)`.
fn pt_fixed_basis(pt: &AntilinearOperator, basis: &[CVector]) -> Result<Vec<CVector>> {
    let i = Complex64::new(0.0, 1.0);
    let mut candidates = Vec::with_capacity(2 * basis.len());
    for v in basis {
        let tv = apply_antilinear(pt, v)?;
        candidates.push(v + &tv);
        candidates.push((v - &tv) * i);
    }
    let mut chosen = Vec::with_capacity(basis.len());
    let mut ortho: Vec<CVector> = Vec::with_capacity(basis.len());
    for _ in 0..basis.len() {
        let mut best: Option<(f64, usize, CVector)> = None;
        for (idx, cand) in candidates.iter().enumerate() {
            let norm = cand.norm();
            if norm == 0.0 {
                continue;
            }
            let mut r = cand / Complex64::new(norm, 0.0);
            for q in &ortho {
                let proj = q.dotc(&r);
                r -= q * proj;
            }
            let rn = r.norm();
            if best.as_ref().is_none_or(|b| rn > b.0) {
                best = Some((rn, idx, r));
            }
        }
        let (rn, idx, r) = best.ok_or(Error::FixedPointFailure {
            residual: f64::INFINITY,
        })?;
        if rn < 1e-8 {
            return Err(Error::FixedPointFailure { residual: rn });
        }
        ortho.push(r / Complex64::new(rn, 0.0));
        let cand = &candidates[idx];
        chosen.push(cand / Complex64::new(cand.norm(), 0.0));
    }
    Ok(chosen)
}

pub fn pt_biorthonormal_system(h: &CMatrix, p: &CMatrix, t: &AntilinearOperator) -> Result<BiorthonormalSystem> {
    pt_biorthonormal_system_with(h, p, t, &Tolerances::default())
}

/// Biorthonormal system whose `ψₙ` are PT-invariant and normalized so that
/// `|ψₙ† P ψₙ| = 1`. For the symmetric 2x2 family with `T = ⋆` this is the
/// closed-form eigenvector normalization.
pub fn pt_biorthonormal_system_with(
    h: &CMatrix,
    p: &CMatrix,
    t: &AntilinearOperator,
    tol: &Tolerances,
) -> Result<BiorthonormalSystem> {
    let report = check_exactness_with(h, p, t, tol)?;
    match report.failure_reason {
        ExactnessFailure::ComplexEigenvalues => return Err(Error::ComplexSpectrum),
        ExactnessFailure::NotDiagonalizable => {
            return Err(Error::NotDiagonalizable {
                condition: f64::INFINITY,
            })
        }
        ExactnessFailure::None => {}
    }
    let mut psi = report.fixed_eigenvectors;
    for k in 0..psi.ncols() {
        let v = psi.column(k).into_owned();
        let q = v.dotc(&(p * &v)).re;
        if !(q.abs() > 1e-12) {
            return Err(Error::NullPTNorm);
        }
        psi.set_column(k, &(v / Complex64::new(q.abs().sqrt(), 0.0)));
    }
    BiorthonormalSystem::from_right_eigenvectors(psi, report.eigenvalues)
}
