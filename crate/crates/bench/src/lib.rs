//! Shared inputs for the benchmarks.

use orsep::matrices::{brown_matrix, random_matrix};
use orsep::BooleanMatrix;

/// Auto-selected Brown matrix for `p`.
pub fn brown(p: u64) -> BooleanMatrix {
    brown_matrix(p, None)
        .expect("benchmark primes are valid")
        .matrix
}

/// Square random matrix with a fixed seed.
pub fn random_square(m: usize, density: f64) -> BooleanMatrix {
    random_matrix(m, m, density, 0x5eed)
}
