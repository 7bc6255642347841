//! Hand-written closed forms for the 2x2 families, used as oracles against
//! the generic pipeline and the binary. Nothing here calls into the family
//! constructors of the library.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_complex::Complex64;
use pht_cli::MatrixDocument;
use pht_core::CMatrix;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[a, b, cc, d])
}

/// Symmetric family `H(r, s, t, φ)`.
pub fn family_h(r: f64, s: f64, t: f64, phi: f64) -> CMatrix {
    let (sn, cs) = phi.sin_cos();
    let off = c(t * sn, s * cs);
    m2(c(r + t * cs, -s * sn), off, off, c(r - t * cs, s * sn))
}

/// Five-parameter family; `u` multiplies σ₂.
pub fn general_h(r: f64, s: f64, t: f64, u: f64, phi: f64) -> CMatrix {
    let (sn, cs) = phi.sin_cos();
    m2(
        c(r + t * cs, -s * sn),
        c(t * sn, s * cs - u),
        c(t * sn, s * cs + u),
        c(r - t * cs, s * sn),
    )
}

pub fn eta_closed(alpha: f64) -> CMatrix {
    let (sec, tan) = (1.0 / alpha.cos(), alpha.tan());
    m2(c(sec, 0.0), c(0.0, tan), c(0.0, -tan), c(sec, 0.0))
}

pub fn parity_closed(phi: f64) -> CMatrix {
    let (sn, cs) = phi.sin_cos();
    m2(c(cs, 0.0), c(sn, 0.0), c(sn, 0.0), c(-cs, 0.0))
}

pub fn charge_closed(alpha: f64, phi: f64) -> CMatrix {
    let (sec, tan) = (1.0 / alpha.cos(), alpha.tan());
    let (sn, cs) = phi.sin_cos();
    let off = c(sec * sn, tan * cs);
    m2(c(sec * cs, -tan * sn), off, off, c(-sec * cs, tan * sn))
}

pub fn rho_closed(alpha: f64) -> CMatrix {
    let (sec, tan) = (1.0 / alpha.cos(), alpha.tan());
    let (lo, hi) = ((sec - tan).sqrt(), (sec + tan).sqrt());
    let (rp, rm) = (0.5 * (lo + hi), 0.5 * (lo - hi));
    m2(c(rp, 0.0), c(0.0, -rm), c(0.0, rm), c(rp, 0.0))
}

/// `r I + √(t² - s²) 𝒫(φ)`.
pub fn hermitian_closed(r: f64, s: f64, t: f64, phi: f64) -> CMatrix {
    CMatrix::identity(2, 2) * c(r, 0.0) + parity_closed(phi) * c((t * t - s * s).sqrt(), 0.0)
}

/// The closed forms label the eigenvector with eigenvalue `r + t cos α` as
/// `+`. For `t < 0` that is the lower level, so the same matrix is written
/// with `(-s, -t, φ + π)` to keep `+` on the upper level.
pub fn upper_first(s: f64, t: f64, phi: f64) -> (f64, f64, f64) {
    if t < 0.0 {
        (-s, -t, phi + std::f64::consts::PI)
    } else {
        (s, t, phi)
    }
}

/// Roots of the characteristic polynomial of a 2x2 matrix, larger real part first.
pub fn char_poly_roots(h: &CMatrix) -> [Complex64; 2] {
    let half_tr = (h[(0, 0)] + h[(1, 1)]) * 0.5;
    let det = h[(0, 0)] * h[(1, 1)] - h[(0, 1)] * h[(1, 0)];
    let disc = (half_tr * half_tr - det).sqrt();
    let (a, b) = (half_tr + disc, half_tr - disc);
    if a.re >= b.re {
        [a, b]
    } else {
        [b, a]
    }
}

pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_entry(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise agreement to 15 significant digits of the larger matrix scale.
pub fn agrees_15(actual: &CMatrix, expected: &CMatrix) -> bool {
    actual.shape() == expected.shape()
        && max_diff(actual, expected) <= 5e-15 * max_entry(expected).max(max_entry(actual)).max(1e-300)
}

pub fn pht() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pht"))
}

pub fn run(args: &[&str]) -> Output {
    pht().args(args).output().expect("binary runs")
}

pub fn write_matrix(dir: &Path, name: &str, m: &CMatrix) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(&MatrixDocument::from_matrix(m)).unwrap()).unwrap();
    path
}

pub fn parse_matrix(value: &serde_json::Value) -> CMatrix {
    serde_json::from_value::<MatrixDocument>(value.clone())
        .unwrap()
        .to_matrix()
        .unwrap()
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}
