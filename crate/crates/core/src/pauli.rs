//! Pauli matrices and closed-form SU(2) exponentials.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::CMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity2() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn sigma1() -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn sigma2() -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn sigma3() -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// Pauli matrix by 1-based axis index. Panics outside `1..=3`.
pub fn sigma(axis: usize) -> CMatrix {
    match axis {
        1 => sigma1(),
        2 => sigma2(),
        3 => sigma3(),
        _ => panic!("Pauli axis {axis} out of range"),
    }
}

/// Levi-Civita symbol on 1-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// `n·σ` for a real three-vector `n`.
pub fn dot_sigma(n: [f64; 3]) -> CMatrix {
    sigma1() * c(n[0], 0.0) + sigma2() * c(n[1], 0.0) + sigma3() * c(n[2], 0.0)
}

/// `exp(iθ n·σ) = cos θ I + i sin θ n·σ` for a unit vector `n`.
pub fn su2_exp(theta: f64, n: [f64; 3]) -> CMatrix {
    identity2() * c(theta.cos(), 0.0) + dot_sigma(n) * (I * theta.sin())
}

/// `exp(iθ σ_axis)`.
pub fn axis_exp(theta: f64, axis: usize) -> CMatrix {
    let mut n = [0.0; 3];
    n[axis - 1] = 1.0;
    su2_exp(theta, n)
}
