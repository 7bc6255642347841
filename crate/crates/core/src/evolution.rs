//! Schrödinger evolution `ψ(t) = e^{-iH(t - t₀)} ψ(t₀)` (ħ = 1) and norm
//! trajectories under the Euclidean, pseudo and metric inner products.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::metric::{inner_product, verify_pseudo_hermiticity, InnerProductKind};
use crate::spectral::{check_square_finite, check_vector, eigendecompose, matrix_exp, SpectrumClass};
use crate::{CMatrix, CVector};

#[derive(Debug, Clone)]
pub struct EvolutionSpec {
    hamiltonian: CMatrix,
    initial_state: CVector,
    t0: f64,
    t1: f64,
    steps: usize,
}

impl EvolutionSpec {
    pub fn new(hamiltonian: CMatrix, initial_state: CVector, t0: f64, t1: f64, steps: usize) -> Result<Self> {
        let n = check_square_finite(&hamiltonian)?;
        check_vector(&initial_state, n)?;
        if initial_state.norm() == 0.0 {
            return Err(Error::InvalidSpec("initial state is zero".into()));
        }
        if !(t0.is_finite() && t1.is_finite()) || !(t1 > t0) {
            return Err(Error::InvalidSpec(format!("need finite t0 < t1, got [{t0}, {t1}]")));
        }
        if steps == 0 {
            return Err(Error::InvalidSpec("steps must be at least 1".into()));
        }
        Ok(Self {
            hamiltonian,
            initial_state,
            t0,
            t1,
            steps,
        })
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn initial_state(&self) -> &CVector {
        &self.initial_state
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// The `steps + 1` uniformly spaced sample times, endpoints included.
    pub fn times(&self) -> Vec<f64> {
        let dt = (self.t1 - self.t0) / self.steps as f64;
        (0..=self.steps)
            .map(|k| {
                if k == self.steps {
                    self.t1
                } else {
                    self.t0 + k as f64 * dt
                }
            })
            .collect()
    }
}

/// `e^{-iHτ}`.
pub fn propagator(h: &CMatrix, tau: f64) -> Result<CMatrix> {
    matrix_exp(&(h * Complex64::new(0.0, -tau)))
}

pub fn evolve(spec: &EvolutionSpec, t: f64) -> Result<CVector> {
    if !(t >= spec.t0 && t <= spec.t1) {
        return Err(Error::OutOfRange {
            t,
            t0: spec.t0,
            t1: spec.t1,
        });
    }
    Ok(propagator(&spec.hamiltonian, t - spec.t0)? * &spec.initial_state)
}

#[derive(Debug, Clone)]
pub struct NormTrajectory {
    pub times: Vec<f64>,
    /// `√⟨ψ(t), ψ(t)⟩`; for an indefinite weight the value is `sign(x)·√|x|`.
    pub norms: Vec<f64>,
    pub kind: InnerProductKind,
}

impl NormTrajectory {
    /// `max |nₖ - n₀| / n₀`.
    pub fn max_relative_drift(&self) -> f64 {
        let first = self.norms[0].abs();
        self.norms.iter().map(|n| (n - self.norms[0]).abs()).fold(0.0, f64::max) / first
    }

    /// `max nₖ / min nₖ - 1`.
    pub fn spread(&self) -> f64 {
        let max = self.norms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = self.norms.iter().copied().fold(f64::INFINITY, f64::min);
        max / min - 1.0
    }
}

pub fn norm_trajectory(spec: &EvolutionSpec, kind: InnerProductKind) -> Result<NormTrajectory> {
    let n = spec.hamiltonian.nrows();
    if let Some(w) = kind.weight() {
        if w.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.nrows(),
            });
        }
    }
    if let InnerProductKind::MetricEta(m) = &kind {
        if eigendecompose(&spec.hamiltonian)?.classification != SpectrumClass::RealDiagonalizable {
            return Err(Error::NoPositiveMetric);
        }
        let residual = verify_pseudo_hermiticity(&spec.hamiltonian, m.eta_plus())?;
        if residual > 1e-8 {
            return Err(Error::NotPseudoHermitian { residual });
        }
    }
    let times = spec.times();
    let mut norms = Vec::with_capacity(times.len());
    for &t in &times {
        let psi = evolve(spec, t)?;
        let x = inner_product(&psi, &psi, &kind)?.re;
        norms.push(x.signum() * x.abs().sqrt());
    }
    Ok(NormTrajectory { times, norms, kind })
}

/// Slope of a least-squares fit of `ln(norm)` against `t` over the latter 60%
/// of the time window.
pub fn fit_growth_exponent(traj: &NormTrajectory) -> Result<f64> {
    let (first, last) = match (traj.times.first(), traj.times.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::InvalidSpec("empty trajectory".into())),
    };
    let cutoff = first + 0.4 * (last - first);
    let points: Vec<(f64, f64)> = traj
        .times
        .iter()
        .zip(&traj.norms)
        .filter(|(&t, _)| t >= cutoff)
        .map(|(&t, &n)| (t, n))
        .collect();
    if points.len() < 2 {
        return Err(Error::InvalidSpec("too few samples to fit".into()));
    }
    if points.iter().any(|&(_, n)| !(n > 0.0)) {
        return Err(Error::InvalidSpec("norms must be positive to fit a growth rate".into()));
    }
    let m = points.len() as f64;
    let tm = points.iter().map(|p| p.0).sum::<f64>() / m;
    let lm = points.iter().map(|p| p.1.ln()).sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(t, n) in &points {
        sxy += (t - tm) * (n.ln() - lm);
        sxx += (t - tm) * (t - tm);
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{symmetric_hamiltonian, symmetric_operators, SymmetricFamilyParams};
    use crate::metric::{build_eta_plus, hermitize};
    use crate::spectral::biorthonormalize;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[a, b, cc, d])
    }

    fn e0() -> CVector {
        CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])
    }

    #[test]
    fn spec_validation() {
        let h = CMatrix::identity(2, 2);
        assert!(EvolutionSpec::new(h.clone(), CVector::zeros(2), 0.0, 1.0, 10).is_err());
        assert!(EvolutionSpec::new(h.clone(), e0(), 1.0, 1.0, 10).is_err());
        assert!(EvolutionSpec::new(h.clone(), e0(), 0.0, 1.0, 0).is_err());
        assert!(matches!(
            EvolutionSpec::new(h.clone(), CVector::zeros(3), 0.0, 1.0, 1),
            Err(Error::DimensionMismatch { .. })
        ));
        let spec = EvolutionSpec::new(h, e0(), 0.0, 1.0, 4).unwrap();
        assert_eq!(spec.times(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(
            evolve(&spec, 1.5).unwrap_err(),
            Error::OutOfRange {
                t: 1.5,
                t0: 0.0,
                t1: 1.0
            }
        );
    }

    #[test]
    fn zero_hamiltonian_is_stationary() {
        let psi0 = CVector::from_vec(vec![c(0.3, -0.2), c(1.0, 0.5)]);
        let spec = EvolutionSpec::new(CMatrix::zeros(2, 2), psi0.clone(), 0.0, 5.0, 10).unwrap();
        for t in spec.times() {
            assert_eq!(evolve(&spec, t).unwrap(), psi0);
        }
    }

    #[test]
    fn diagonal_phases() {
        let e = 1.3;
        let h = m2(c(e, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-e, 0.0));
        let spec = EvolutionSpec::new(h, e0(), 0.0, 4.0, 40).unwrap();
        for t in spec.times() {
            let psi = evolve(&spec, t).unwrap();
            assert!((psi[0] - c(0.0, -e * t).exp()).norm() < 1e-13);
            assert!(psi[1].norm() < 1e-15);
        }
        let traj = norm_trajectory(&spec, InnerProductKind::Euclidean).unwrap();
        assert!(traj.max_relative_drift() < 1e-10);
    }

    #[test]
    fn metric_norm_is_conserved_for_family() {
        let h = m2(c(2.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-2.0, 0.0));
        let ops = symmetric_operators(&SymmetricFamilyParams::new(0.0, 1.0, 2.0, 0.0)).unwrap();
        let spec = EvolutionSpec::new(h.clone(), e0(), 0.0, 10.0, 1000).unwrap();
        let traj = norm_trajectory(&spec, InnerProductKind::MetricEta(ops.metric().unwrap())).unwrap();
        let expected = (2.0 / 3f64.sqrt()).sqrt();
        for n in &traj.norms {
            assert!((n - expected).abs() < 1e-10);
        }
        assert!((expected * expected - 1.154701).abs() < 1e-6);
        assert!((expected - 1.074570).abs() < 1e-6);

        let euclid = norm_trajectory(&spec, InnerProductKind::Euclidean).unwrap();
        assert!(euclid.spread() > 1e-3);
    }

    #[test]
    fn pseudo_norm_is_conserved_and_signed() {
        let h = m2(c(2.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-2.0, 0.0));
        let psi0 = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let spec = EvolutionSpec::new(h, psi0, 0.0, 5.0, 200).unwrap();
        let p = m2(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        let traj = norm_trajectory(&spec, InnerProductKind::pseudo(p).unwrap()).unwrap();
        for n in &traj.norms {
            assert!((n + 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn metric_kind_rejected_for_broken_symmetry() {
        let h = m2(c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(-1.0, 0.0));
        let spec = EvolutionSpec::new(h, e0(), 0.0, 1.0, 10).unwrap();
        let m = crate::metric::MetricOperator::identity(2);
        assert_eq!(
            norm_trajectory(&spec, InnerProductKind::MetricEta(m)).unwrap_err(),
            Error::NoPositiveMetric
        );
    }

    #[test]
    fn metric_kind_rejected_for_wrong_metric() {
        let h = m2(c(2.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-2.0, 0.0));
        let spec = EvolutionSpec::new(h, e0(), 0.0, 1.0, 10).unwrap();
        let m = crate::metric::MetricOperator::identity(2);
        assert!(matches!(
            norm_trajectory(&spec, InnerProductKind::MetricEta(m)),
            Err(Error::NotPseudoHermitian { .. })
        ));
    }

    #[test]
    fn broken_symmetry_growth_rate() {
        let h = m2(c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(-1.0, 0.0));
        for (t0, t1) in [(0.0, 6.0), (0.0, 10.0)] {
            let spec = EvolutionSpec::new(h.clone(), e0(), t0, t1, 1000).unwrap();
            let traj = norm_trajectory(&spec, InnerProductKind::Euclidean).unwrap();
            let rate = fit_growth_exponent(&traj).unwrap();
            assert!((rate / 3f64.sqrt() - 1.0).abs() < 0.05, "rate {rate}");
        }
    }

    #[test]
    fn growth_fit_on_exact_exponential() {
        let times: Vec<f64> = (0..=50).map(|k| k as f64 * 0.1).collect();
        let norms = times.iter().map(|t| 3.0 * (0.7 * t).exp()).collect();
        let traj = NormTrajectory {
            times,
            norms,
            kind: InnerProductKind::Euclidean,
        };
        assert!((fit_growth_exponent(&traj).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn hermitian_picture_matches_metric_norm() {
        let h = symmetric_hamiltonian(&SymmetricFamilyParams::new(0.2, 0.8, 1.1, 1.4));
        let b = biorthonormalize(&h).unwrap();
        let m = build_eta_plus(&b).unwrap();
        let small_h = hermitize(&h, &m).unwrap();
        let phi0 = CVector::from_vec(vec![c(0.6, 0.1), c(-0.2, 0.7)]);
        let psi0 = m.rho_plus_inv() * &phi0;
        let spec_h = EvolutionSpec::new(h, psi0, 0.0, 10.0, 100).unwrap();
        let spec_small = EvolutionSpec::new(small_h, phi0, 0.0, 10.0, 100).unwrap();
        let metric = norm_trajectory(&spec_h, InnerProductKind::MetricEta(m)).unwrap();
        let euclid = norm_trajectory(&spec_small, InnerProductKind::Euclidean).unwrap();
        for (a, b) in metric.norms.iter().zip(&euclid.norms) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn composition_of_propagators() {
        let h = m2(c(0.5, 0.1), c(0.0, 1.2), c(0.3, 0.0), c(-0.4, 0.0));
        let spec = EvolutionSpec::new(h.clone(), e0(), 1.0, 4.0, 3).unwrap();
        let (t1, t2) = (1.7, 3.6);
        let direct = evolve(&spec, t2).unwrap();
        let stepped = propagator(&h, t2 - t1).unwrap() * evolve(&spec, t1).unwrap();
        assert!((direct - stepped).norm() < 1e-12);
    }
}
