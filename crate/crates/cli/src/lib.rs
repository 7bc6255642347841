//! The `pht` command-line tool: JSON matrix input, spectral and symmetry
//! reports, metric bundles, closed-form families and norm traces.

pub mod documents;
pub mod error;

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pht_core::antilinear::{
    check_exactness_with, check_pt_symmetry, is_hermitian_antilinear_involution, pt_biorthonormal_system_with,
    AntilinearOperator, ExactnessFailure, TimeReversalParams,
};
use pht_core::evolution::{norm_trajectory, EvolutionSpec};
use pht_core::families::{
    general_hamiltonian, general_operators, general_t_operators, general_t_system, hermitize_equivalence,
    reduce_general_to_symmetric, symmetric_hamiltonian, symmetric_operators, FamilyOperators, GeneralFamilyParams,
    GeneralTFamilyParams, SymmetricFamilyParams,
};
use pht_core::metric::{
    build_charge_conjugation, build_eta_plus, build_generalized_parity, hermitize_with, InnerProductKind,
    MetricOperator,
};
use pht_core::spectral::{
    biorthonormalize_symmetric_with, biorthonormalize_with, eigendecompose_with, relative, BiorthonormalSystem,
    SpectrumClass,
};
use pht_core::{CMatrix, Tolerances};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub use documents::{format_sig, MatrixDocument, StateDocument};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "pht",
    version,
    about = "Metric operators and PT-symmetry diagnostics for non-Hermitian matrices"
)]
pub struct Cli {
    /// Relative tolerance for deciding that an eigenvalue is real.
    #[arg(long, global = true, env = "PHT_RTOL")]
    pub rtol: Option<f64>,
    /// Residual threshold for symmetry and pseudo-Hermiticity checks.
    #[arg(long, global = true)]
    pub atol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the spectrum and test PT-symmetry and its exactness.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        symmetry: SymmetryArgs,
        /// Exit with status 3 unless the symmetry is exact.
        #[arg(long)]
        require_exact: bool,
    },
    /// Emit the metric, generalized parity, charge conjugation and square root.
    Metric {
        input: PathBuf,
        #[command(flatten)]
        symmetry: SymmetryArgs,
    },
    /// Emit the equivalent Hermitian Hamiltonian.
    Hermitize {
        input: PathBuf,
        #[command(flatten)]
        symmetry: SymmetryArgs,
    },
    /// Emit a member of a closed-form 2x2 family with its operators.
    Family(FamilyArgs),
    /// Sample the norm of a solution of the Schrödinger equation as CSV.
    Evolve {
        input: PathBuf,
        /// Initial state document.
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        t1: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = NormKind::Euclidean)]
        norm: NormKind,
        #[command(flatten)]
        symmetry: SymmetryArgs,
    },
    /// Test [H, PT] = 0 for a given parity and time-reversal.
    CheckPt {
        input: PathBuf,
        #[command(flatten)]
        symmetry: SymmetryArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SymmetryArgs {
    /// Parity matrix document (default: identity).
    #[arg(long)]
    pub parity: Option<PathBuf>,
    /// Linear part τ of the time-reversal T = τ⋆ (default: identity).
    #[arg(long)]
    pub tau: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Symmetric,
    General,
    GeneralT,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct FamilyArgs {
    #[arg(value_enum)]
    pub kind: FamilyKind,
    #[arg(long, default_value_t = 0.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0)]
    pub s: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 0.0)]
    pub u: f64,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub xi: f64,
    #[arg(long, default_value_t = 0.0)]
    pub zeta: f64,
    /// Emit the Hamiltonian even when the symmetry is broken.
    #[arg(long)]
    pub allow_broken: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    Euclidean,
    Metric,
}

/// Text for standard output and the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub dim: usize,
    pub classification: SpectrumClass,
    pub eigenvalues: Vec<[f64; 2]>,
    pub eigvec_condition: f64,
    pub pt_symmetric: bool,
    pub pt_residual: f64,
    pub exact: bool,
    /// Why the symmetry is not exact: `ComplexEigenvalues`, `NotDiagonalizable`,
    /// `NotPTSymmetric` or `FixedPointFailure`.
    pub exactness_failure: Option<String>,
    pub metric_available: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricBundle {
    pub eta_plus: MatrixDocument,
    pub parity: MatrixDocument,
    pub charge: MatrixDocument,
    pub rho_plus: MatrixDocument,
    /// `pt`, `symmetric` or `canonical`.
    pub normalization: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PtReport {
    pub pt_symmetric: bool,
    pub residual: f64,
    pub tau_is_hermitian_involution: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyBundle {
    pub kind: FamilyKind,
    pub broken: bool,
    pub hamiltonian: MatrixDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_plus: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charge: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_plus: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u1: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u2: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_prime: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_prime_hermitian: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pt_parity: Option<MatrixDocument>,
}

pub fn tolerances(cli: &Cli) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Some(rtol) = cli.rtol {
        if !(rtol > 0.0 && rtol.is_finite()) {
            return Err(CliError::Input(format!("--rtol must be positive, got {rtol}")));
        }
        tol.reality_rtol = rtol;
    }
    if let Some(atol) = cli.atol {
        if !(atol > 0.0 && atol.is_finite()) {
            return Err(CliError::Input(format!("--atol must be positive, got {atol}")));
        }
        tol.symmetry = atol;
        tol.pseudo_hermitian = atol;
    }
    Ok(tol)
}

fn read_text(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Input(format!("malformed document {}: {e}", path.display())))
}

pub fn read_matrix(path: &PathBuf) -> Result<CMatrix, CliError> {
    read_json::<MatrixDocument>(path)?.to_matrix()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents hold finite numbers");
    s.push('\n');
    s
}

struct Symmetry {
    parity: Option<CMatrix>,
    time_reversal: AntilinearOperator,
}

impl Symmetry {
    fn load(args: &SymmetryArgs, dim: usize) -> Result<Self, CliError> {
        let load = |p: &Option<PathBuf>| -> Result<Option<CMatrix>, CliError> {
            match p {
                None => Ok(None),
                Some(path) => {
                    let m = read_matrix(path)?;
                    if m.nrows() != dim {
                        return Err(CliError::Input(format!(
                            "{} has dimension {}, expected {dim}",
                            path.display(),
                            m.nrows()
                        )));
                    }
                    Ok(Some(m))
                }
            }
        };
        let parity = load(&args.parity)?;
        let tau = load(&args.tau)?.unwrap_or_else(|| CMatrix::identity(dim, dim));
        Ok(Self {
            parity,
            time_reversal: AntilinearOperator::new(tau)?,
        })
    }

    fn parity_or_identity(&self, dim: usize) -> CMatrix {
        self.parity.clone().unwrap_or_else(|| CMatrix::identity(dim, dim))
    }
}

/// Biorthonormal system under the normalization the inputs support: PT
/// invariance when a parity is given, the bilinear form for complex-symmetric
/// input, and unit-norm eigenvectors otherwise.
fn normalized_system(
    h: &CMatrix,
    sym: &Symmetry,
    tol: &Tolerances,
) -> Result<(BiorthonormalSystem, &'static str), CliError> {
    if let Some(p) = &sym.parity {
        return Ok((pt_biorthonormal_system_with(h, p, &sym.time_reversal, tol)?, "pt"));
    }
    if relative(&(h - h.transpose()), h.norm()) <= 1e-14 {
        if let Ok(b) = biorthonormalize_symmetric_with(h, tol) {
            return Ok((b, "symmetric"));
        }
    }
    Ok((biorthonormalize_with(h, tol)?, "canonical"))
}

fn analyze(h: &CMatrix, sym: &Symmetry, tol: &Tolerances) -> Result<AnalysisReport, CliError> {
    let n = h.nrows();
    let sd = eigendecompose_with(h, tol)?;
    let parity = sym.parity_or_identity(n);
    let pt_residual = check_pt_symmetry(h, &parity, &sym.time_reversal)?;
    let pt_symmetric = pt_residual <= tol.symmetry;
    let metric_available = sd.classification == SpectrumClass::RealDiagonalizable;
    let (exact, exactness_failure) = if !pt_symmetric {
        (false, Some("NotPTSymmetric".to_string()))
    } else {
        match check_exactness_with(h, &parity, &sym.time_reversal, tol) {
            Ok(report) => match report.failure_reason {
                ExactnessFailure::None => (report.exact, None),
                other => (false, Some(format!("{other:?}"))),
            },
            // real spectrum, yet no eigenvector basis is PT-invariant
            Err(pht_core::Error::FixedPointFailure { .. }) => (false, Some("FixedPointFailure".to_string())),
            Err(e) => return Err(e.into()),
        }
    };
    Ok(AnalysisReport {
        dim: n,
        classification: sd.classification,
        eigenvalues: sd.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
        eigvec_condition: sd.eigvec_condition,
        pt_symmetric,
        pt_residual,
        exact,
        exactness_failure,
        metric_available,
    })
}

fn doc(m: &CMatrix) -> MatrixDocument {
    MatrixDocument::from_matrix(m)
}

fn metric_for(
    h: &CMatrix,
    sym: &Symmetry,
    tol: &Tolerances,
) -> Result<(BiorthonormalSystem, MetricOperator, &'static str), CliError> {
    let (b, normalization) = normalized_system(h, sym, tol)?;
    let m = build_eta_plus(&b)?;
    Ok((b, m, normalization))
}

fn family(args: &FamilyArgs) -> Result<FamilyBundle, CliError> {
    let general = GeneralFamilyParams::new(args.r, args.s, args.t, args.u, args.phi);
    let symmetric = SymmetricFamilyParams::new(args.r, args.s, args.t, args.phi);
    let tparams = TimeReversalParams::new(args.gamma, args.xi, args.zeta);
    let gt = GeneralTFamilyParams { base: general, tparams };
    let (hamiltonian, exact) = match args.kind {
        FamilyKind::Symmetric => {
            if args.u != 0.0 {
                return Err(CliError::Input("--u is only meaningful for general families".into()));
            }
            (symmetric_hamiltonian(&symmetric), symmetric.is_exact())
        }
        FamilyKind::General => (general_hamiltonian(&general), general.is_exact()),
        FamilyKind::GeneralT => (general_t_system(&gt).hamiltonian, general.is_exact()),
    };
    let mut bundle = FamilyBundle {
        kind: args.kind,
        broken: !exact,
        hamiltonian: doc(&hamiltonian),
        eta_plus: None,
        parity: None,
        charge: None,
        rho_plus: None,
        hermitian: None,
        u1: None,
        u2: None,
        h_prime: None,
        h_prime_hermitian: None,
        u: None,
        tau: None,
        pt_parity: None,
    };
    if !exact {
        if args.allow_broken {
            return Ok(bundle);
        }
        return Err(CliError::Failure(
            "parameters violate the exactness condition; pass --allow-broken to emit the Hamiltonian".into(),
        ));
    }
    let ops: FamilyOperators = match args.kind {
        FamilyKind::Symmetric => symmetric_operators(&symmetric)?,
        FamilyKind::General => {
            let red = reduce_general_to_symmetric(&general)?;
            let eq = hermitize_equivalence(&general)?;
            bundle.u1 = Some(doc(&red.u1));
            bundle.u2 = Some(doc(&eq.u2));
            bundle.h_prime = Some(doc(&red.h_prime));
            bundle.h_prime_hermitian = Some(doc(&eq.h_prime_hermitian));
            general_operators(&general)?
        }
        FamilyKind::GeneralT => {
            let sys = general_t_system(&gt);
            bundle.u = Some(doc(&sys.u));
            bundle.tau = Some(doc(sys.time_reversal.tau()));
            bundle.pt_parity = Some(doc(&sys.parity));
            general_t_operators(&gt)?
        }
    };
    bundle.eta_plus = Some(doc(&ops.eta_plus));
    bundle.parity = Some(doc(&ops.parity));
    bundle.charge = Some(doc(&ops.charge));
    bundle.rho_plus = Some(doc(&ops.rho_plus));
    bundle.hermitian = Some(doc(&ops.hermitian));
    Ok(bundle)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Analyze {
            input,
            symmetry,
            require_exact,
        } => {
            let h = read_matrix(input)?;
            let sym = Symmetry::load(symmetry, h.nrows())?;
            let report = analyze(&h, &sym, &tol)?;
            let code = if *require_exact && !report.exact { 3 } else { 0 };
            Ok(Outcome {
                stdout: to_json(&report),
                code,
            })
        }
        Command::Metric { input, symmetry } => {
            let h = read_matrix(input)?;
            let sym = Symmetry::load(symmetry, h.nrows())?;
            let (b, m, normalization) = metric_for(&h, &sym, &tol)?;
            Ok(Outcome::ok(to_json(&MetricBundle {
                eta_plus: doc(m.eta_plus()),
                parity: doc(&build_generalized_parity(&b)),
                charge: doc(&build_charge_conjugation(&b)),
                rho_plus: doc(m.rho_plus()),
                normalization,
            })))
        }
        Command::Hermitize { input, symmetry } => {
            let h = read_matrix(input)?;
            let sym = Symmetry::load(symmetry, h.nrows())?;
            let (_, m, _) = metric_for(&h, &sym, &tol)?;
            let small = hermitize_with(&h, &m, &tol)?;
            Ok(Outcome::ok(to_json(&doc(&small))))
        }
        Command::Family(args) => Ok(Outcome::ok(to_json(&family(args)?))),
        Command::Evolve {
            input,
            state,
            t0,
            t1,
            steps,
            norm,
            symmetry,
        } => {
            let h = read_matrix(input)?;
            let psi0 = read_json::<StateDocument>(state)?.to_vector()?;
            let sym = Symmetry::load(symmetry, h.nrows())?;
            let spec = EvolutionSpec::new(h.clone(), psi0, *t0, *t1, *steps)?;
            let kind = match norm {
                NormKind::Euclidean => InnerProductKind::Euclidean,
                NormKind::Metric => {
                    let class = eigendecompose_with(&h, &tol)?.classification;
                    if class != SpectrumClass::RealDiagonalizable {
                        return Err(CliError::Failure(format!(
                            "no positive-definite metric exists: spectrum is {class:?}"
                        )));
                    }
                    InnerProductKind::MetricEta(metric_for(&h, &sym, &tol)?.1)
                }
            };
            let traj = norm_trajectory(&spec, kind)?;
            let mut out = String::from("t,norm\n");
            for (t, n) in traj.times.iter().zip(&traj.norms) {
                out.push_str(&format!("{},{}\n", format_sig(*t), format_sig(*n)));
            }
            Ok(Outcome::ok(out))
        }
        Command::CheckPt { input, symmetry } => {
            let h = read_matrix(input)?;
            let sym = Symmetry::load(symmetry, h.nrows())?;
            let residual = check_pt_symmetry(&h, &sym.parity_or_identity(h.nrows()), &sym.time_reversal)?;
            let report = PtReport {
                pt_symmetric: residual <= tol.symmetry,
                residual,
                tau_is_hermitian_involution: is_hermitian_antilinear_involution(&sym.time_reversal)
                    .is_hermitian_involution,
            };
            let code = if report.pt_symmetric { 0 } else { 3 };
            Ok(Outcome {
                stdout: to_json(&report),
                code,
            })
        }
    }
}
