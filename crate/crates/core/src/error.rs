use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty matrix")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("eigensolver failed to converge")]
    EigenSolverFailed,
    #[error("matrix is not diagonalizable to working precision (eigenvector condition {condition:e})")]
    NotDiagonalizable { condition: f64 },
    #[error("spectrum is not real")]
    ComplexSpectrum,
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not positive-definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("weight operator is singular")]
    SingularWeight,
    #[error("parity operator is singular")]
    SingularParity,
    #[error("Hamiltonian is not pseudo-Hermitian with respect to the metric (residual {residual:e})")]
    NotPseudoHermitian { residual: f64 },
    #[error("Hamiltonian does not commute with PT (residual {residual:e})")]
    NotPTSymmetric { residual: f64 },
    #[error("could not build PT-invariant eigenvectors (residual {residual:e})")]
    FixedPointFailure { residual: f64 },
    #[error("PT-invariant eigenvector has vanishing PT norm")]
    NullPTNorm,
    #[error("matrix is not complex-symmetric (residual {residual:e})")]
    NotSymmetric { residual: f64 },
    #[error("eigenvector is isotropic for the bilinear form (xᵀx = 0)")]
    IsotropicEigenvector,
    #[error("invalid Pauli axis pair ({i}, {j})")]
    InvalidAxis { i: usize, j: usize },
    #[error("parameters lie on or beyond the exceptional point (|s| >= |t|)")]
    ExceptionalPoint,
    #[error("t and u both vanish; the rotation direction is undefined")]
    DegenerateDirection,
    #[error("parameters violate the exactness condition |s| < sqrt(t^2 + u^2)")]
    BrokenSymmetryParams,
    #[error("time {t} outside [{t0}, {t1}]")]
    OutOfRange { t: f64, t0: f64, t1: f64 },
    #[error("no positive-definite metric exists for this Hamiltonian")]
    NoPositiveMetric,
    #[error("invalid evolution spec: {0}")]
    InvalidSpec(String),
}
