use rand::Rng;

use super::{is_k_free, BooleanMatrix, Freeness};
use crate::rng::seeded;

/// Each cell is 1 independently with probability `density`.
pub fn random_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> BooleanMatrix {
    assert!(
        (0.0..=1.0).contains(&density),
        "density {density} outside [0, 1]"
    );
    let mut rng = seeded(seed);
    BooleanMatrix::from_fn(rows, cols, |_, _| rng.random_bool(density))
}

/// Starts from [`random_matrix`] and, while a `k`-rectangle exists, clears
/// one uniformly chosen cell of the first witness.
pub fn random_k_free(rows: usize, cols: usize, density: f64, k: usize, seed: u64) -> BooleanMatrix {
    let mut m = random_matrix(rows, cols, density, seed);
    let mut rng = seeded(seed ^ 0x9e37_79b9_7f4a_7c15);
    loop {
        match is_k_free(&m, k).expect("k >= 2 and no budget") {
            Freeness::Free => return m,
            Freeness::Contains(w) => {
                let i = w.rows[rng.random_range(0..w.rows.len())];
                let j = w.cols[rng.random_range(0..w.cols.len())];
                m.set(i, j, false);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_extremes() {
        assert_eq!(random_matrix(4, 4, 0.0, 7), BooleanMatrix::zeros(4, 4));
        assert_eq!(random_matrix(4, 9, 1.0, 7), BooleanMatrix::ones(4, 9));
    }

    #[test]
    fn seeded_determinism() {
        assert_eq!(random_matrix(20, 30, 0.4, 1), random_matrix(20, 30, 0.4, 1));
        assert_ne!(random_matrix(20, 30, 0.4, 1), random_matrix(20, 30, 0.4, 2));
    }

    #[test]
    fn k_free_postcondition() {
        let m = random_k_free(20, 20, 0.5, 3, 11);
        assert!(is_k_free(&m, 3).unwrap().is_free());
        assert_eq!(m, random_k_free(20, 20, 0.5, 3, 11));
    }
}
