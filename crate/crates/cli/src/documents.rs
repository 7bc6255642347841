//! JSON documents for matrices and state vectors. Complex entries are
//! `[re, im]` pairs.

use num_complex::Complex64;
use pht_core::{CMatrix, CVector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn finite(p: &[f64; 2]) -> bool {
    p[0].is_finite() && p[1].is_finite()
}

impl MatrixDocument {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let entries = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| pair(&m[(i, j)])).collect())
            .collect();
        Self {
            dim: m.nrows(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix, CliError> {
        if self.dim == 0 {
            return Err(CliError::Input("matrix dimension must be at least 1".into()));
        }
        if self.entries.len() != self.dim || self.entries.iter().any(|row| row.len() != self.dim) {
            return Err(CliError::Input(format!("entries do not form a {0}x{0} grid", self.dim)));
        }
        if !self.entries.iter().flatten().all(finite) {
            return Err(CliError::Input("matrix entries must be finite".into()));
        }
        Ok(CMatrix::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.entries[i][j];
            Complex64::new(re, im)
        }))
    }
}

impl StateDocument {
    pub fn from_vector(v: &CVector) -> Self {
        Self {
            dim: v.len(),
            entries: v.iter().map(pair).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<CVector, CliError> {
        if self.dim == 0 || self.entries.len() != self.dim {
            return Err(CliError::Input(format!("state must have {} entries", self.dim)));
        }
        if !self.entries.iter().all(finite) {
            return Err(CliError::Input("state entries must be finite".into()));
        }
        Ok(CVector::from_iterator(
            self.dim,
            self.entries.iter().map(|&[re, im]| Complex64::new(re, im)),
        ))
    }
}

/// Formats `x` with 15 significant digits, switching to exponent form
/// outside `[1e-5, 1e15)`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        let decimals = (14 - exponent).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // rounding can carry into a new leading digit (9.99.. -> 10.0..)
        let digits = s
            .chars()
            .filter(|c| c.is_ascii_digit())
            .skip_while(|&c| c == '0')
            .count();
        if digits > 15 && decimals > 0 {
            let decimals = decimals - 1;
            return format!("{x:.decimals$}");
        }
        s
    } else {
        format!("{x:.14e}")
    }
}
