//! Dense complex linear algebra: eigendecomposition with diagnostics,
//! biorthonormal eigenbases, Hermitian square roots and matrix exponentials.

use std::cmp::Ordering;
use std::ops::Range;

use nalgebra::{DVector, Schur, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::{CMatrix, CVector};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Validates that `m` is a non-empty square matrix with finite entries and
/// returns its dimension.
pub fn check_square_finite(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(Error::Empty);
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(m.nrows())
}

pub(crate) fn check_vector(v: &CVector, dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// `||m - m†||_F / ||m||_F`, or zero for the zero matrix.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    relative(&(m - m.adjoint()), m.norm())
}

/// `||diff||_F / scale`, falling back to the absolute norm when `scale` vanishes.
pub fn relative(diff: &CMatrix, scale: f64) -> f64 {
    let d = diff.norm();
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Ordering used for all spectra: real part descending, then imaginary part descending.
pub fn spectral_order(a: &Complex64, b: &Complex64) -> Ordering {
    b.re.partial_cmp(&a.re)
        .unwrap_or(Ordering::Equal)
        .then(b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
}

/// Largest distance between two eigenvalue multisets under greedy
/// nearest-neighbour matching. Infinite when the lengths differ.
pub fn spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0_f64;
    for x in a {
        let (idx, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap_or(Ordering::Equal))
            .expect("lengths checked");
        used[idx] = true;
        worst = worst.max(d);
    }
    worst
}

/// True when every non-real value has a distinct partner within `tol` of its conjugate.
pub fn is_conjugation_closed(values: &[Complex64], real_tol: f64, tol: f64) -> bool {
    let nonreal: Vec<Complex64> = values.iter().copied().filter(|z| z.im.abs() > real_tol).collect();
    spectrum_distance(&nonreal, &nonreal.iter().map(|z| z.conj()).collect::<Vec<_>>()) <= tol
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumClass {
    /// All eigenvalues real and a well-conditioned eigenbasis.
    RealDiagonalizable,
    /// Diagonalizable with non-real eigenvalues in complex-conjugate pairs.
    ConjugatePairs,
    /// Diagonalizable with non-real eigenvalues that are not conjugation-closed.
    UnpairedComplex,
    /// Eigenvectors (nearly) coalesce.
    NearDefective,
}

#[derive(Debug, Clone)]
pub struct SpectralData {
    /// Sorted by [`spectral_order`].
    pub eigenvalues: Vec<Complex64>,
    /// Unit-norm right eigenvectors as columns, in eigenvalue order.
    pub right_eigenvectors: CMatrix,
    /// 2-norm condition number of `right_eigenvectors`.
    pub eigvec_condition: f64,
    pub classification: SpectrumClass,
    /// Index ranges of numerically degenerate eigenvalues (singletons included).
    pub clusters: Vec<Range<usize>>,
}

pub fn eigendecompose(h: &CMatrix) -> Result<SpectralData> {
    eigendecompose_with(h, &Tolerances::default())
}

/// Eigenpairs of a general complex matrix via the complex Schur form and
/// triangular back-substitution, followed by cluster orthonormalization and
/// classification.
pub fn eigendecompose_with(h: &CMatrix, tol: &Tolerances) -> Result<SpectralData> {
    let n = check_square_finite(h)?;
    let scale = h.norm();

    let (q, t) = Schur::try_new(h.clone(), f64::EPSILON, 1000 * n.max(10))
        .ok_or(Error::EigenSolverFailed)?
        .unpack();
    let raw_values: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();
    let smin = (f64::EPSILON * t.norm()).max(f64::MIN_POSITIVE);

    let mut raw_vectors = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = raw_values[k];
        let mut x = CVector::zeros(n);
        x[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = ZERO;
            for l in j + 1..=k {
                acc += t[(j, l)] * x[l];
            }
            let mut d = t[(j, j)] - lambda;
            if d.norm() < smin {
                d = Complex64::new(smin, 0.0);
            }
            x[j] = -acc / d;
            if x[j].norm() > 1e150 {
                x *= Complex64::new(1e-150, 0.0);
            }
        }
        let v = &q * x;
        let norm = v.norm();
        raw_vectors.set_column(k, &(v / Complex64::new(norm, 0.0)));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| spectral_order(&raw_values[a], &raw_values[b]));
    let eigenvalues: Vec<Complex64> = order.iter().map(|&k| raw_values[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &raw_vectors.column(src));
    }

    let gap = tol.cluster_gap * scale;
    let mut clusters = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || (eigenvalues[k] - eigenvalues[k - 1]).norm() > gap {
            clusters.push(start..k);
            start = k;
        }
    }

    let mut defective = false;
    for cluster in clusters.iter().filter(|c| c.len() > 1) {
        if !orthonormalize_columns(&mut vectors, cluster.clone()) {
            defective = true;
            continue;
        }
        // Jordan structure survives orthonormalization as a large residual.
        let allowed = (cluster.len() as f64) * gap + 1e-12 * scale;
        for k in cluster.clone() {
            let v = vectors.column(k).into_owned();
            let r = (h * &v - &v * eigenvalues[k]).norm();
            if r > allowed {
                defective = true;
            }
        }
    }

    let sv = vectors.clone().svd(false, false).singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let smin_v = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let eigvec_condition = if smin_v > 0.0 { smax / smin_v } else { f64::INFINITY };

    let classification = if defective || !(eigvec_condition <= tol.defect_condition) {
        SpectrumClass::NearDefective
    } else if eigenvalues
        .iter()
        .all(|z| z.im.abs() <= tol.reality_rtol * (1.0 + z.norm()))
    {
        SpectrumClass::RealDiagonalizable
    } else if is_conjugation_closed(&eigenvalues, tol.reality_rtol * (1.0 + scale), 1e-8 * (1.0 + scale)) {
        SpectrumClass::ConjugatePairs
    } else {
        SpectrumClass::UnpairedComplex
    };

    Ok(SpectralData {
        eigenvalues,
        right_eigenvectors: vectors,
        eigvec_condition,
        classification,
        clusters,
    })
}

/// Modified Gram-Schmidt (two passes) on a range of columns. Returns `false`
/// when the columns are numerically rank deficient.
fn orthonormalize_columns(m: &mut CMatrix, cols: Range<usize>) -> bool {
    let first = cols.start;
    for k in cols {
        let mut v = m.column(k).into_owned();
        let before = v.norm();
        for _ in 0..2 {
            for j in first..k {
                let u = m.column(j);
                let proj = u.dotc(&v);
                v -= u * proj;
            }
        }
        let after = v.norm();
        if !(after > 1e-8 * before) {
            return false;
        }
        m.set_column(k, &(v / Complex64::new(after, 0.0)));
    }
    true
}

/// Rotates `v` so that its largest-modulus entry is real and positive.
pub fn fix_phase(v: &mut CVector) {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(Ordering::Equal));
    if let Some(p) = pivot {
        if p.norm() > 0.0 {
            *v *= p.conj() / p.norm();
        }
    }
}

/// Paired eigenvectors `ψₙ` of `H` and `φₙ` of `H†` with `⟨φₙ, ψₘ⟩ = δₙₘ`.
#[derive(Debug, Clone)]
pub struct BiorthonormalSystem {
    psi: CMatrix,
    phi: CMatrix,
    eigenvalues: Vec<f64>,
}

impl BiorthonormalSystem {
    /// Builds the dual basis from the rows of `Ψ⁻¹` and rescales each `φₙ`
    /// so that `⟨φₙ, ψₙ⟩ = 1`.
    pub fn from_right_eigenvectors(psi: CMatrix, eigenvalues: Vec<f64>) -> Result<Self> {
        let n = check_square_finite(&psi)?;
        if eigenvalues.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: eigenvalues.len(),
            });
        }
        let inv = psi.clone().try_inverse().ok_or(Error::NotDiagonalizable {
            condition: f64::INFINITY,
        })?;
        let mut phi = inv.adjoint();
        for k in 0..n {
            let c = phi.column(k).dotc(&psi.column(k));
            let mut col = phi.column_mut(k);
            col /= c.conj();
        }
        Ok(Self { psi, phi, eigenvalues })
    }

    /// Takes both bases as given, e.g. from a closed-form construction.
    pub fn from_parts(psi: CMatrix, phi: CMatrix, eigenvalues: Vec<f64>) -> Result<Self> {
        let n = check_square_finite(&psi)?;
        if check_square_finite(&phi)? != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: phi.nrows(),
            });
        }
        if eigenvalues.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: eigenvalues.len(),
            });
        }
        Ok(Self { psi, phi, eigenvalues })
    }

    pub fn dim(&self) -> usize {
        self.psi.nrows()
    }

    pub fn psi(&self, n: usize) -> CVector {
        self.psi.column(n).into_owned()
    }

    pub fn phi(&self, n: usize) -> CVector {
        self.phi.column(n).into_owned()
    }

    /// Right eigenvectors as columns.
    pub fn psi_matrix(&self) -> &CMatrix {
        &self.psi
    }

    /// Eigenvectors of `H†` as columns.
    pub fn phi_matrix(&self) -> &CMatrix {
        &self.phi
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `max |⟨φₙ, ψₘ⟩ - δₙₘ|`.
    pub fn biorthonormality_residual(&self) -> f64 {
        let n = self.dim();
        max_abs_diff(&(self.phi.adjoint() * &self.psi), &CMatrix::identity(n, n))
    }

    /// `max |Σₙ ψₙ φₙ† - I|`.
    pub fn completeness_residual(&self) -> f64 {
        let n = self.dim();
        max_abs_diff(&(&self.psi * self.phi.adjoint()), &CMatrix::identity(n, n))
    }

    /// Spectral resolution `Σₙ Eₙ ψₙ φₙ†`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = CMatrix::from_diagonal(&DVector::from_iterator(
            self.dim(),
            self.eigenvalues.iter().map(|&e| Complex64::new(e, 0.0)),
        ));
        &self.psi * d * self.phi.adjoint()
    }
}

pub fn biorthonormalize(h: &CMatrix) -> Result<BiorthonormalSystem> {
    biorthonormalize_with(h, &Tolerances::default())
}

/// Biorthonormal eigensystem of a diagonalizable matrix with real spectrum.
/// Each `ψₙ` is unit-norm with its largest-modulus entry real positive.
pub fn biorthonormalize_with(h: &CMatrix, tol: &Tolerances) -> Result<BiorthonormalSystem> {
    let sd = eigendecompose_with(h, tol)?;
    match sd.classification {
        SpectrumClass::NearDefective => {
            return Err(Error::NotDiagonalizable {
                condition: sd.eigvec_condition,
            })
        }
        SpectrumClass::ConjugatePairs | SpectrumClass::UnpairedComplex => return Err(Error::ComplexSpectrum),
        SpectrumClass::RealDiagonalizable => {}
    }
    let mut psi = sd.right_eigenvectors;
    for k in 0..psi.ncols() {
        let mut v = psi.column(k).into_owned();
        fix_phase(&mut v);
        psi.set_column(k, &v);
    }
    BiorthonormalSystem::from_right_eigenvectors(psi, sd.eigenvalues.iter().map(|z| z.re).collect())
}

pub fn biorthonormalize_symmetric(h: &CMatrix) -> Result<BiorthonormalSystem> {
    biorthonormalize_symmetric_with(h, &Tolerances::default())
}

/// Biorthonormal eigensystem of a complex-symmetric `H = Hᵀ` normalized by
/// the bilinear form: `ψₙᵀψₘ = 0` for `n ≠ m` and `|ψₙᵀψₙ| = 1`, so that
/// `φₙ ∝ ψₙ*`. For a PT-symmetric `H` with real parity and `T = ⋆` this is
/// the same scaling as `|ψₙ†Pψₙ| = 1` on PT-invariant eigenvectors.
pub fn biorthonormalize_symmetric_with(h: &CMatrix, tol: &Tolerances) -> Result<BiorthonormalSystem> {
    check_square_finite(h)?;
    let residual = relative(&(h - h.transpose()), h.norm());
    if residual > tol.symmetry {
        return Err(Error::NotSymmetric { residual });
    }
    let sd = eigendecompose_with(h, tol)?;
    match sd.classification {
        SpectrumClass::NearDefective => {
            return Err(Error::NotDiagonalizable {
                condition: sd.eigvec_condition,
            })
        }
        SpectrumClass::ConjugatePairs | SpectrumClass::UnpairedComplex => return Err(Error::ComplexSpectrum),
        SpectrumClass::RealDiagonalizable => {}
    }
    let mut psi = sd.right_eigenvectors;
    for cluster in &sd.clusters {
        let block: Vec<CVector> = cluster.clone().map(|k| psi.column(k).into_owned()).collect();
        for (offset, v) in bilinear_orthonormalize(block)?.into_iter().enumerate() {
            psi.set_column(cluster.start + offset, &v);
        }
    }
    BiorthonormalSystem::from_right_eigenvectors(psi, sd.eigenvalues.iter().map(|z| z.re).collect())
}

/// Pivoted Gram-Schmidt for the bilinear form `xᵀy`. Pairwise sums are
/// tried when every remaining vector is isotropic.
fn bilinear_orthonormalize(mut rest: Vec<CVector>) -> Result<Vec<CVector>> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let score = |v: &CVector| v.dot(v).norm() / v.norm_squared().max(f64::MIN_POSITIVE);
        let mut best = (0.0, 0, None::<usize>);
        for (i, v) in rest.iter().enumerate() {
            let s = score(v);
            if s > best.0 {
                best = (s, i, None);
            }
        }
        if best.0 < 1e-6 {
            for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    for w in [&rest[i] + &rest[j], &rest[i] + &rest[j] * Complex64::i()] {
                        let s = score(&w);
                        if s > best.0 {
                            best = (s, i, Some(j));
                        }
                    }
                }
            }
        }
        if best.0 < 1e-10 {
            return Err(Error::IsotropicEigenvector);
        }
        let (_, i, partner) = best;
        let mut q = rest[i].clone();
        if let Some(j) = partner {
            let plain = &rest[i] + &rest[j];
            let twisted = &rest[i] + &rest[j] * Complex64::i();
            q = if score(&plain) >= score(&twisted) {
                plain
            } else {
                twisted
            };
        }
        rest.remove(i);
        q /= q.dot(&q).sqrt();
        for v in rest.iter_mut() {
            let proj = q.dot(v);
            *v -= &q * proj;
        }
        out.push(q);
    }
    Ok(out)
}

fn hermitian_eigen(a: &CMatrix, tol: f64) -> Result<(DVector<f64>, CMatrix)> {
    check_square_finite(a)?;
    let residual = hermiticity_residual(a);
    if residual > tol {
        return Err(Error::NotHermitian { residual });
    }
    let herm = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    Ok((eig.eigenvalues, eig.eigenvectors))
}

fn spectral_function(values: &DVector<f64>, vectors: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let d = CMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        values.iter().map(|&x| Complex64::new(f(x), 0.0)),
    ));
    vectors * d * vectors.adjoint()
}

/// Positive square root and its inverse of a Hermitian positive-definite matrix.
pub fn positive_sqrt_pair(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let (values, vectors) = hermitian_eigen(a, Tolerances::default().hermitian)?;
    let max = values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(max > 0.0) || !(min > 1e-12 * max) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    Ok((
        spectral_function(&values, &vectors, f64::sqrt),
        spectral_function(&values, &vectors, |x| 1.0 / x.sqrt()),
    ))
}

/// The unique Hermitian positive-definite `R` with `R² = A`.
pub fn hermitian_positive_sqrt(a: &CMatrix) -> Result<CMatrix> {
    positive_sqrt_pair(a).map(|(r, _)| r)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_hermitian_eigenvalue(a: &CMatrix) -> Result<f64> {
    let (values, _) = hermitian_eigen(a, Tolerances::default().hermitian)?;
    Ok(values.iter().copied().fold(f64::INFINITY, f64::min))
}

/// `exp(A)` by Padé scaling-and-squaring.
pub fn matrix_exp(a: &CMatrix) -> Result<CMatrix> {
    check_square_finite(a)?;
    let e = a.exp();
    check_square_finite(&e)?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[a, b, cc, d])
    }

    fn real_diag(vals: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_iterator(vals.len(), vals.iter().map(|&x| c(x, 0.0))))
    }

    /// Roots of λ² - tr λ + det for a 2x2 matrix.
    fn char_poly_roots(m: &CMatrix) -> [Complex64; 2] {
        let tr = m[(0, 0)] + m[(1, 1)];
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let disc = (tr * tr - det * 4.0).sqrt();
        [(tr + disc) / 2.0, (tr - disc) / 2.0]
    }

    #[test]
    fn diagonal_is_real_diagonalizable() {
        let sd = eigendecompose(&real_diag(&[1.0, 2.0])).unwrap();
        assert_eq!(sd.classification, SpectrumClass::RealDiagonalizable);
        assert!((sd.eigenvalues[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((sd.eigenvalues[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((sd.eigvec_condition - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_family_member_matches_characteristic_polynomial() {
        let h = m2(c(2.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-2.0, 0.0));
        let sd = eigendecompose(&h).unwrap();
        assert_eq!(sd.classification, SpectrumClass::RealDiagonalizable);
        let oracle = char_poly_roots(&h);
        assert!(spectrum_distance(&sd.eigenvalues, &oracle) < 1e-13);
        assert!((sd.eigenvalues[0].re - 3f64.sqrt()).abs() < 1e-13);
        for k in 0..2 {
            let v = sd.right_eigenvectors.column(k).into_owned();
            assert!((&h * &v - &v * sd.eigenvalues[k]).norm() <= 1e-10 * h.norm());
        }
    }

    #[test]
    fn broken_family_member_has_conjugate_pairs() {
        let h = m2(c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(-1.0, 0.0));
        let sd = eigendecompose(&h).unwrap();
        assert_eq!(sd.classification, SpectrumClass::ConjugatePairs);
        let expected = [c(0.0, 3f64.sqrt()), c(0.0, -3f64.sqrt())];
        assert!(spectrum_distance(&sd.eigenvalues, &expected) < 1e-12);
        assert!(spectrum_distance(&sd.eigenvalues, &char_poly_roots(&h)) < 1e-12);
    }

    #[test]
    fn unpaired_complex_spectrum() {
        let h = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 1.0), c(2.0, 0.0)]));
        assert_eq!(
            eigendecompose(&h).unwrap().classification,
            SpectrumClass::UnpairedComplex
        );
    }

    #[test]
    fn jordan_block_is_near_defective() {
        let h = m2(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        let sd = eigendecompose(&h).unwrap();
        assert_eq!(sd.classification, SpectrumClass::NearDefective);
        assert!(matches!(biorthonormalize(&h), Err(Error::NotDiagonalizable { .. })));
    }

    #[test]
    fn exceptional_point_is_near_defective() {
        // s = t in the symmetric family: nilpotent, non-zero
        let h = m2(c(2.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(-2.0, 0.0));
        assert_eq!(eigendecompose(&h).unwrap().classification, SpectrumClass::NearDefective);
    }

    #[test]
    fn degenerate_cluster_is_orthonormalized() {
        let s = m2(c(1.0, 0.0), c(0.5, 0.2), c(-0.3, 0.1), c(1.0, 0.0));
        let h = &s * real_diag(&[1.0, 1.0]) * s.clone().try_inverse().unwrap();
        let sd = eigendecompose(&h).unwrap();
        assert_eq!(sd.classification, SpectrumClass::RealDiagonalizable);
        assert_eq!(sd.clusters, vec![0..2]);
        let v = &sd.right_eigenvectors;
        assert!(max_abs_diff(&(v.adjoint() * v), &CMatrix::identity(2, 2)) < 1e-12);

        let d3 = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(0.3, 0.0),
                c(0.1, 0.2),
                c(0.0, 0.0),
                c(2.0, 0.0),
                c(0.4, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
            ],
        );
        // eigenvalue 1 twice but rank(A - I) = 2: a Jordan block
        let sd = eigendecompose(&d3).unwrap();
        assert_eq!(sd.classification, SpectrumClass::NearDefective);
    }

    #[test]
    fn scaled_identity_gives_basis() {
        let h = CMatrix::identity(3, 3) * c(2.5, 0.0);
        let b = biorthonormalize(&h).unwrap();
        assert!(b.biorthonormality_residual() < 1e-14);
        assert!(max_abs_diff(&b.reconstruct(), &h) < 1e-14);
    }

    #[test]
    fn biorthonormalize_hermitian_diagonal() {
        let b = biorthonormalize(&real_diag(&[3.0, 5.0])).unwrap();
        // descending order: 5 first
        assert!((b.psi(0) - CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)])).norm() < 1e-15);
        assert!((b.psi(1) - CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])).norm() < 1e-15);
        assert!((b.phi(0) - b.psi(0)).norm() < 1e-15);
        assert!((b.phi(1) - b.psi(1)).norm() < 1e-15);
    }

    #[test]
    fn biorthonormalize_family_member() {
        let h = m2(c(2.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-2.0, 0.0));
        let b = biorthonormalize(&h).unwrap();
        assert!(b.biorthonormality_residual() < 1e-12);
        assert!(b.completeness_residual() < 1e-12);
        // ψ₊ ∝ (1.037956, 0.278114 i), φ₊ ∝ (1.037956, -0.278114 i)
        let psi = b.psi(0);
        // component ratio (1 - cos α)/sin α = tan(α/2) at α = π/6
        let ratio = psi[1] / psi[0];
        assert!((ratio - c(0.0, (PI / 12.0).tan())).norm() < 1e-12);
        assert!((ratio - c(0.0, 0.278114 / 1.037956)).norm() < 1e-5);
        let phi = b.phi(0);
        let ratio = phi[1] / phi[0];
        assert!((ratio - c(0.0, -(PI / 12.0).tan())).norm() < 1e-12);
        // canonical phase: largest entry real positive
        assert!(psi[0].im.abs() < 1e-15 && psi[0].re > 0.0);
        assert!((psi.norm() - 1.0).abs() < 1e-14);
        for k in 0..2 {
            assert!((b.phi(k).dotc(&b.psi(k)) - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn biorthonormalize_rejects_complex_spectrum() {
        let h = m2(c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(-1.0, 0.0));
        assert_eq!(biorthonormalize(&h).unwrap_err(), Error::ComplexSpectrum);
    }

    #[test]
    fn eigendecompose_rejects_non_finite_and_non_square() {
        let h = m2(c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(eigendecompose(&h).unwrap_err(), Error::NonFinite);
        let r = CMatrix::zeros(2, 3);
        assert!(matches!(eigendecompose(&r), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn sqrt_examples() {
        let id = CMatrix::identity(2, 2);
        assert!(max_abs_diff(&hermitian_positive_sqrt(&id).unwrap(), &id) < 1e-15);
        let r = hermitian_positive_sqrt(&real_diag(&[4.0, 9.0])).unwrap();
        assert!(max_abs_diff(&r, &real_diag(&[2.0, 3.0])) < 1e-14);

        let a = PI / 6.0;
        let (sec, tan) = (1.0 / a.cos(), a.tan());
        let eta = m2(c(sec, 0.0), c(0.0, tan), c(0.0, -tan), c(sec, 0.0));
        let rp = 0.5 * ((sec - tan).sqrt() + (sec + tan).sqrt());
        let rm = 0.5 * ((sec - tan).sqrt() - (sec + tan).sqrt());
        let expected = m2(c(rp, 0.0), c(0.0, -rm), c(0.0, rm), c(rp, 0.0));
        let (r, rinv) = positive_sqrt_pair(&eta).unwrap();
        assert!(max_abs_diff(&r, &expected) < 1e-14);
        assert!((r[(0, 0)].re - 1.037955).abs() < 1e-6);
        assert!((r[(0, 1)] - c(0.0, 0.278119)).norm() < 1e-6);
        assert!(max_abs_diff(&(&r * &rinv), &id) < 1e-14);
    }

    #[test]
    fn sqrt_rejects_bad_input() {
        let nh = m2(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(matches!(hermitian_positive_sqrt(&nh), Err(Error::NotHermitian { .. })));
        let indefinite = pauli::sigma3();
        assert!(matches!(
            hermitian_positive_sqrt(&indefinite),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let singular = real_diag(&[1.0, 0.0]);
        assert!(matches!(
            hermitian_positive_sqrt(&singular),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn exp_examples() {
        let z = CMatrix::zeros(2, 2);
        assert!(max_abs_diff(&matrix_exp(&z).unwrap(), &CMatrix::identity(2, 2)) < 1e-15);

        // e^{iπσ₂/2} = iσ₂ = [[0, 1], [-1, 0]]
        let a = pauli::sigma2() * c(0.0, PI / 2.0);
        let expected = m2(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
        assert!(max_abs_diff(&matrix_exp(&a).unwrap(), &expected) < 1e-14);

        let (ep, em, t) = (1.3, -0.4, 2.7);
        let gen = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, -ep * t), c(0.0, -em * t)]));
        let expected = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, -ep * t).exp(), c(0.0, -em * t).exp()]));
        assert!(max_abs_diff(&matrix_exp(&gen).unwrap(), &expected) < 1e-14);
    }

    #[test]
    fn exp_matches_pauli_power_series_identity() {
        // e^{iρ n·σ} = cos ρ I + i sin ρ n·σ
        for &(rho, theta, phi) in &[(0.3_f64, 0.4_f64, 1.1_f64), (2.0, 2.5, -0.7), (7.5, 1.0, 3.0)] {
            let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            let lhs = matrix_exp(&(pauli::dot_sigma(n) * c(0.0, rho))).unwrap();
            let rhs = pauli::identity2() * c(rho.cos(), 0.0) + pauli::dot_sigma(n) * c(0.0, rho.sin());
            assert!(max_abs_diff(&lhs, &rhs) < 1e-13);
        }
    }

    #[test]
    fn exp_rejects_non_finite() {
        let a = m2(c(f64::INFINITY, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(matrix_exp(&a).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn conjugation_closure() {
        assert!(is_conjugation_closed(
            &[c(1.0, 2.0), c(1.0, -2.0), c(3.0, 0.0)],
            1e-12,
            1e-10
        ));
        assert!(!is_conjugation_closed(&[c(1.0, 2.0), c(1.0, -1.0)], 1e-12, 1e-10));
    }

    #[test]
    fn symmetric_normalization_reproduces_family_metric() {
        use crate::families::{symmetric_hamiltonian, symmetric_operators, SymmetricFamilyParams};
        use crate::metric::build_eta_plus;
        for &(r, s, t, phi) in &[(0.0, 1.0, 2.0, 0.0), (0.5, -0.7, 1.1, 2.0), (-1.0, 0.3, -0.8, 4.0)] {
            let p = SymmetricFamilyParams::new(r, s, t, phi);
            let b = biorthonormalize_symmetric(&symmetric_hamiltonian(&p)).unwrap();
            let eta = build_eta_plus(&b).unwrap();
            assert!(max_abs_diff(eta.eta_plus(), &symmetric_operators(&p).unwrap().eta_plus) < 1e-12);
        }
    }

    #[test]
    fn symmetric_normalization_in_degenerate_cluster() {
        // H = O D Oᵀ with O complex orthogonal
        let a = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.0, 0.0),
                c(0.3, 0.4),
                c(-0.2, 0.1),
                c(-0.3, -0.4),
                c(0.0, 0.0),
                c(0.5, -0.3),
                c(0.2, -0.1),
                c(-0.5, 0.3),
                c(0.0, 0.0),
            ],
        );
        let o = matrix_exp(&a).unwrap();
        assert!(max_abs_diff(&(o.transpose() * &o), &CMatrix::identity(3, 3)) < 1e-13);
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.5, 0.0), c(1.5, 0.0), c(-2.0, 0.0)]));
        let h = &o * d * o.transpose();
        let b = biorthonormalize_symmetric(&h).unwrap();
        let psi = b.psi_matrix();
        let gram = psi.transpose() * psi;
        for i in 0..3 {
            assert!((gram[(i, i)].norm() - 1.0).abs() < 1e-10);
            for j in (0..3).filter(|&j| j != i) {
                assert!(gram[(i, j)].norm() < 1e-10);
            }
        }
        assert!(b.biorthonormality_residual() < 1e-10);
        assert!(max_abs_diff(&b.reconstruct(), &h) < 1e-10);
    }

    #[test]
    fn symmetric_normalization_rejects_nonsymmetric() {
        let h = m2(c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        assert!(matches!(
            biorthonormalize_symmetric(&h),
            Err(Error::NotSymmetric { .. })
        ));
        let broken = m2(c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(-1.0, 0.0));
        assert_eq!(biorthonormalize_symmetric(&broken).unwrap_err(), Error::ComplexSpectrum);
    }
}
