//! Boolean matrices, the explicit matrix families, the pair transform and
//! the rectangle analyses built on top of them.

mod bitmatrix;
mod constructions;
mod pairs;
mod random;
mod rectangles;

pub use bitmatrix::{BooleanMatrix, ParseMatrixError};
pub use constructions::{brown_matrix, norm_matrix, sphere_size, BrownMatrix};
pub use pairs::PairIndexer;
pub use random::{random_k_free, random_matrix};
pub use rectangles::{
    count_2_rectangles, count_2_rectangles_with_pairs, is_k_free, is_k_free_with_budget,
    pair_transform, Freeness, PairTransform, RectangleStats, RectangleWitness, TransformMode,
};

use thiserror::Error;

use crate::finfield::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquareInput { rows: usize, cols: usize },
    #[error("pair transform would have {n} rows; materialization is limited to 65536")]
    MaterializeTooLarge { n: u64 },
    #[error("rectangle count exceeds 2^63")]
    CountOverflow,
    #[error("k-freeness search stopped after {expanded} node expansions; result unknown")]
    BudgetExceeded { expanded: u64 },
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("{0} is not an odd prime")]
    CompositeP(u64),
    #[error("{0} is not a prime")]
    CompositeQ(u64),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("field order {order} exceeds the construction limit {limit}")]
    OrderTooLarge { order: u64, limit: u64 },
    #[error("no nonzero delta makes the Brown matrix for p = {0} 3-free")]
    NoFreeDeltaFound(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}
