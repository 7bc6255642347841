//! Random instances: vectors, unitaries, well-conditioned similarity
//! transforms and quasi-Hermitian matrices `S Λ S⁻¹` with real `Λ`.

use num_complex::Complex64;
use rand::Rng;

use crate::{CMatrix, CVector};

fn entry<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Real and imaginary parts uniform in `[-1, 1)`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| entry(rng))
}

/// Real and imaginary parts uniform in `[-1, 1)`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| entry(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let a = random_matrix(rng, n);
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `B B† + shift·I`.
pub fn random_positive_definite<R: Rng + ?Sized>(rng: &mut R, n: usize, shift: f64) -> CMatrix {
    let b = random_matrix(rng, n);
    &b * b.adjoint() + CMatrix::identity(n, n) * Complex64::new(shift, 0.0)
}

/// Q factor of a random matrix with the phases of `R`'s diagonal divided out.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let qr = random_matrix(rng, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

/// `V diag(σ) W` with unitary `V`, `W` and singular values in `[0.5, 2]`,
/// so the condition number is at most 4.
pub fn random_well_conditioned<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let v = random_unitary(rng, n);
    let w = random_unitary(rng, n);
    let d = CMatrix::from_diagonal(&CVector::from_fn(n, |_, _| {
        Complex64::new(rng.random_range(0.5..=2.0), 0.0)
    }));
    v * d * w
}

/// `(S Λ S⁻¹, Λ)` with well-conditioned `S` and `Λ` uniform in `[-scale, scale]`.
pub fn random_quasi_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> (CMatrix, Vec<f64>) {
    let s = random_well_conditioned(rng, n);
    let values: Vec<f64> = (0..n).map(|_| rng.random_range(-scale..=scale)).collect();
    let lambda = CMatrix::from_diagonal(&CVector::from_iterator(
        n,
        values.iter().map(|&x| Complex64::new(x, 0.0)),
    ));
    let s_inv = s.clone().try_inverse().expect("well-conditioned matrix is invertible");
    (&s * lambda * s_inv, values)
}
