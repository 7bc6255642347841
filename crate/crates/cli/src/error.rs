use pht_core::Error;
use thiserror::Error;

/// Exit code 2 for bad input, 3 for symmetry or metric failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ComplexSpectrum => CliError::Failure("symmetry is broken: complex eigenvalues".into()),
            Error::NotDiagonalizable { condition } => CliError::Failure(format!(
                "Hamiltonian is near-defective (eigenvector condition {condition:e})"
            )),
            Error::NonFinite
            | Error::NotSquare { .. }
            | Error::Empty
            | Error::DimensionMismatch { .. }
            | Error::InvalidAxis { .. }
            | Error::InvalidSpec(_)
            | Error::OutOfRange { .. }
            | Error::SingularParity
            | Error::SingularWeight
            | Error::NotHermitian { .. }
            | Error::DegenerateDirection => CliError::Input(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}
