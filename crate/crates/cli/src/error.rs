use std::fmt;
use std::path::Path;

use orsep::bounds::BoundsError;
use orsep::{CircuitError, MatrixError};

/// Process exit status. Argument errors reported by clap also exit with 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    ResourceLimit = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            exit: Exit::InvalidInput,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        CliError {
            exit: Exit::VerificationFailed,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::invalid(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn matrix_exit(e: &MatrixError) -> Exit {
    match e {
        MatrixError::MaterializeTooLarge { .. }
        | MatrixError::OrderTooLarge { .. }
        | MatrixError::BudgetExceeded { .. }
        | MatrixError::CountOverflow => Exit::ResourceLimit,
        _ => Exit::InvalidInput,
    }
}

fn circuit_exit(e: &CircuitError) -> Exit {
    match e {
        CircuitError::TooLargeToMaterialize { .. } | CircuitError::TooManyNodes(_) => {
            Exit::ResourceLimit
        }
        CircuitError::Matrix(m) => matrix_exit(m),
        _ => Exit::InvalidInput,
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        CliError {
            exit: matrix_exit(&e),
            message: e.to_string(),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        CliError {
            exit: circuit_exit(&e),
            message: e.to_string(),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        let exit = match &e {
            BoundsError::NotKFree { .. } => Exit::VerificationFailed,
            BoundsError::Or2BudgetExceeded { .. } | BoundsError::ArithmeticOverflow => {
                Exit::ResourceLimit
            }
            BoundsError::InvalidInput(_) => Exit::InvalidInput,
            BoundsError::Matrix(m) => matrix_exit(m),
            BoundsError::Circuit(c) => circuit_exit(c),
        };
        CliError {
            exit,
            message: e.to_string(),
        }
    }
}
