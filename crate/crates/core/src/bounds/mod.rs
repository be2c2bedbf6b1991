//! Certified bounds on OR-complexity and the separation report.

mod counting;
mod nechiporuk;
mod or2;
mod report;

pub use counting::{counting_certificate, CountingCertificate};
pub use nechiporuk::{nechiporuk_lower, LowerBoundCertificate};
pub use or2::{exact_or2, Depth2Cover, Or2Solution};
pub use report::{
    norm_free_parameter, report_to_csv, report_to_json, separation_report, separation_row,
    spot_check_pair_freeness, transferred_freeness, Family, ReportOptions, ReportRow, RowChecks,
    VerificationTier, CSV_HEADER,
};

use thiserror::Error;

use crate::circuits::CircuitError;
use crate::matrices::{MatrixError, RectangleWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("matrix is not {k}-free: rows {:?}, columns {:?}", witness.rows, witness.cols)]
    NotKFree { k: usize, witness: RectangleWitness },
    #[error("depth-2 search stopped after {expanded} nodes; best cover found costs {}", best.cost)]
    Or2BudgetExceeded {
        expanded: u64,
        best: Box<Depth2Cover>,
    },
    #[error("{0}")]
    InvalidInput(String),
    #[error("intermediate value exceeds 128-bit arithmetic")]
    ArithmeticOverflow,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
