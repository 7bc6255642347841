/// Numerical thresholds shared by the spectral and symmetry routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// An eigenvalue counts as real when `|Im λ| <= reality_rtol * (1 + |λ|)`.
    pub reality_rtol: f64,
    /// Eigenvector-matrix condition number above which a matrix is `NearDefective`.
    pub defect_condition: f64,
    /// Eigenvalues closer than `cluster_gap * ||H||` are treated as degenerate.
    pub cluster_gap: f64,
    /// Relative Hermiticity residual accepted for weights and metrics.
    pub hermitian: f64,
    /// Pseudo-Hermiticity residual required before hermitizing.
    pub pseudo_hermitian: f64,
    /// PT-commutation residual required before testing exactness.
    pub symmetry: f64,
    /// Accepted `||PTψ - ψ||` for unit eigenvectors.
    pub fixed_point: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            reality_rtol: 1e-9,
            defect_condition: 1e8,
            cluster_gap: 1e-8,
            hermitian: 1e-10,
            pseudo_hermitian: 1e-8,
            symmetry: 1e-8,
            fixed_point: 1e-9,
        }
    }
}
