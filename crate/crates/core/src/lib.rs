//! Metric operators, hermitization and antilinear symmetries for
//! finite-dimensional non-Hermitian Hamiltonians with exact PT-symmetry.

// `!(x > y)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antilinear;
pub mod error;
pub mod evolution;
pub mod families;
pub mod metric;
pub mod pauli;
pub mod sampling;
pub mod spectral;
pub mod tolerance;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use error::{Error, Result};
pub use tolerance::Tolerances;

/// Dense complex matrix; carries Hamiltonians, metrics and symmetry generators.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;
