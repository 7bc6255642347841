//! Metric operators built from biorthonormal systems, generalized parity and
//! charge conjugation, hermitization, and the weighted inner products.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::sampling::random_vector;
use crate::spectral::{
    check_square_finite, check_vector, hermiticity_residual, max_abs_diff, positive_sqrt_pair, relative,
    BiorthonormalSystem,
};
use crate::tolerance::Tolerances;
use crate::{CMatrix, CVector};

/// A positive-definite metric `η₊` with its positive square root `ρ₊` and `ρ₊⁻¹`.
#[derive(Debug, Clone)]
pub struct MetricOperator {
    eta_plus: CMatrix,
    rho_plus: CMatrix,
    rho_plus_inv: CMatrix,
}

impl MetricOperator {
    /// Validates `η₊` (Hermitian, positive-definite) and takes its square root.
    pub fn from_eta(eta_plus: CMatrix) -> Result<Self> {
        let (rho_plus, rho_plus_inv) = positive_sqrt_pair(&eta_plus)?;
        Ok(Self {
            eta_plus,
            rho_plus,
            rho_plus_inv,
        })
    }

    /// Wraps precomputed factors, e.g. closed forms. Rejects them if
    /// `invariant_residual` exceeds `1e-10`.
    pub fn from_parts(eta_plus: CMatrix, rho_plus: CMatrix, rho_plus_inv: CMatrix) -> Result<Self> {
        let n = check_square_finite(&eta_plus)?;
        for m in [&rho_plus, &rho_plus_inv] {
            if check_square_finite(m)? != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.nrows(),
                });
            }
        }
        let m = Self {
            eta_plus,
            rho_plus,
            rho_plus_inv,
        };
        let residual = m.invariant_residual();
        if residual > 1e-10 {
            return Err(Error::NotHermitian { residual });
        }
        Ok(m)
    }

    pub fn identity(dim: usize) -> Self {
        let id = CMatrix::identity(dim, dim);
        Self {
            eta_plus: id.clone(),
            rho_plus: id.clone(),
            rho_plus_inv: id,
        }
    }

    pub fn dim(&self) -> usize {
        self.eta_plus.nrows()
    }

    pub fn eta_plus(&self) -> &CMatrix {
        &self.eta_plus
    }

    pub fn rho_plus(&self) -> &CMatrix {
        &self.rho_plus
    }

    pub fn rho_plus_inv(&self) -> &CMatrix {
        &self.rho_plus_inv
    }

    /// `η₊⁻¹ = ρ₊⁻¹ ρ₊⁻¹`.
    pub fn eta_plus_inv(&self) -> CMatrix {
        &self.rho_plus_inv * &self.rho_plus_inv
    }

    /// Largest of the three invariant residuals: Hermiticity of `η₊`,
    /// `||ρ₊² - η₊|| / ||η₊||` and `max |ρ₊ρ₊⁻¹ - I|`.
    pub fn invariant_residual(&self) -> f64 {
        let n = self.dim();
        let herm = hermiticity_residual(&self.eta_plus);
        let square = relative(
            &(&self.rho_plus * &self.rho_plus - &self.eta_plus),
            self.eta_plus.norm(),
        );
        let inverse = max_abs_diff(&(&self.rho_plus * &self.rho_plus_inv), &CMatrix::identity(n, n));
        herm.max(square).max(inverse)
    }
}

/// Signs `sₙ` for the generalized parity: `+, -, +, -, ...` in descending
/// eigenvalue order.
pub fn parity_signs(b: &BiorthonormalSystem) -> Vec<f64> {
    let values = b.eigenvalues();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap_or(std::cmp::Ordering::Equal));
    let mut signs = vec![0.0; values.len()];
    for (rank, &idx) in order.iter().enumerate() {
        signs[idx] = if rank % 2 == 0 { 1.0 } else { -1.0 };
    }
    signs
}

fn weighted_sum(left: &CMatrix, right: &CMatrix, weights: &[f64]) -> CMatrix {
    let n = left.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &w) in weights.iter().enumerate() {
        out += left.column(k) * right.column(k).adjoint() * Complex64::new(w, 0.0);
    }
    out
}

/// `η₊ = Σₙ φₙ φₙ†`.
pub fn build_eta_plus(b: &BiorthonormalSystem) -> Result<MetricOperator> {
    let ones = vec![1.0; b.dim()];
    MetricOperator::from_eta(weighted_sum(b.phi_matrix(), b.phi_matrix(), &ones))
}

/// `𝒫 = Σₙ sₙ φₙ φₙ†`.
pub fn build_generalized_parity(b: &BiorthonormalSystem) -> CMatrix {
    weighted_sum(b.phi_matrix(), b.phi_matrix(), &parity_signs(b))
}

/// `𝒞 = Σₙ sₙ ψₙ φₙ†`.
pub fn build_charge_conjugation(b: &BiorthonormalSystem) -> CMatrix {
    weighted_sum(b.psi_matrix(), b.phi_matrix(), &parity_signs(b))
}

/// Inverse of a Hermitian weight, rejecting numerically singular input.
fn invert_weight(eta: &CMatrix) -> Result<CMatrix> {
    let sv = eta.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if !(max > 0.0) || !(min > 1e-13 * max) {
        return Err(Error::SingularWeight);
    }
    eta.clone().try_inverse().ok_or(Error::SingularWeight)
}

/// `||H† - η H η⁻¹||_F / ||H||_F`.
pub fn verify_pseudo_hermiticity(h: &CMatrix, eta: &CMatrix) -> Result<f64> {
    let n = check_square_finite(h)?;
    if check_square_finite(eta)? != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: eta.nrows(),
        });
    }
    let inv = invert_weight(eta)?;
    Ok(relative(&(h.adjoint() - eta * h * inv), h.norm()))
}

pub fn hermitize(h: &CMatrix, m: &MetricOperator) -> Result<CMatrix> {
    hermitize_with(h, m, &Tolerances::default())
}

/// Equivalent Hermitian Hamiltonian `h = ρ₊ H ρ₊⁻¹`.
pub fn hermitize_with(h: &CMatrix, m: &MetricOperator, tol: &Tolerances) -> Result<CMatrix> {
    let residual = verify_pseudo_hermiticity(h, m.eta_plus())?;
    if residual > tol.pseudo_hermitian {
        return Err(Error::NotPseudoHermitian { residual });
    }
    Ok(m.rho_plus() * h * m.rho_plus_inv())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapDirection {
    /// `Õ = ρ₊⁻¹ O ρ₊`
    ToTilde,
    /// `O = ρ₊ Õ ρ₊⁻¹`
    FromTilde,
}

pub fn map_observable(o: &CMatrix, m: &MetricOperator, direction: MapDirection) -> Result<CMatrix> {
    let n = check_square_finite(o)?;
    if n != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: n,
        });
    }
    Ok(match direction {
        MapDirection::ToTilde => m.rho_plus_inv() * o * m.rho_plus(),
        MapDirection::FromTilde => m.rho_plus() * o * m.rho_plus_inv(),
    })
}

#[derive(Debug, Clone)]
pub enum InnerProductKind {
    /// `ψ†φ`
    Euclidean,
    /// `ψ†ηφ` for a Hermitian invertible, possibly indefinite, weight.
    PseudoEta(CMatrix),
    /// `ψ†η₊φ`
    MetricEta(MetricOperator),
}

impl InnerProductKind {
    /// Checked constructor for the pseudo-inner product.
    pub fn pseudo(weight: CMatrix) -> Result<Self> {
        check_square_finite(&weight)?;
        let residual = hermiticity_residual(&weight);
        if residual > Tolerances::default().hermitian {
            return Err(Error::NotHermitian { residual });
        }
        invert_weight(&weight)?;
        Ok(Self::PseudoEta(weight))
    }

    pub fn weight(&self) -> Option<&CMatrix> {
        match self {
            Self::Euclidean => None,
            Self::PseudoEta(w) => Some(w),
            Self::MetricEta(m) => Some(m.eta_plus()),
        }
    }
}

pub fn inner_product(psi: &CVector, phi: &CVector, kind: &InnerProductKind) -> Result<Complex64> {
    check_vector(phi, psi.len())?;
    check_vector(psi, psi.len())?;
    match kind.weight() {
        None => Ok(psi.dotc(phi)),
        Some(w) => {
            if w.nrows() != psi.len() {
                return Err(Error::DimensionMismatch {
                    expected: w.nrows(),
                    found: psi.len(),
                });
            }
            Ok(psi.dotc(&(w * phi)))
        }
    }
}

/// Max of `|⟨⟨ρ₊⁻¹ψ, ρ₊⁻¹φ⟩⟩ - ⟨ψ, φ⟩|` over random vector pairs.
pub fn verify_rho_unitarity<R: Rng + ?Sized>(m: &MetricOperator, trials: usize, rng: &mut R) -> f64 {
    let n = m.dim();
    let kind = InnerProductKind::MetricEta(m.clone());
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let psi = random_vector(rng, n);
        let phi = random_vector(rng, n);
        let mapped =
            inner_product(&(m.rho_plus_inv() * &psi), &(m.rho_plus_inv() * &phi), &kind).expect("dimensions agree");
        worst = worst.max((mapped - psi.dotc(&phi)).norm());
    }
    worst
}
