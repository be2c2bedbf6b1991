use serde::Serialize;

use super::BoundsError;
use crate::matrices::{is_k_free_with_budget, BooleanMatrix, Freeness};

/// `OR(A) >= ceil(|A| / K^2)` for a verified `K`-free `A`. When `K = 2`
/// the bound is tight and `OR(A) = OR_2(A) = |A|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundCertificate {
    pub k: usize,
    pub weight: u64,
    pub bound: u64,
    pub freeness_verified: bool,
    pub exact_for_2_free: bool,
    /// Exact OR-complexity, known only in the 2-free case.
    pub exact_or: Option<u64>,
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub fn nechiporuk_lower(
    a: &BooleanMatrix,
    k: usize,
    budget: Option<u64>,
) -> Result<LowerBoundCertificate, BoundsError> {
    match is_k_free_with_budget(a, k, budget)? {
        Freeness::Contains(witness) => Err(BoundsError::NotKFree { k, witness }),
        Freeness::Free => {
            let weight = a.weight();
            let exact = k == 2;
            Ok(LowerBoundCertificate {
                k,
                weight,
                bound: ceil_div(weight, (k * k) as u64),
                freeness_verified: true,
                exact_for_2_free: exact,
                exact_or: exact.then_some(weight),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::MatrixError;

    #[test]
    fn identity_is_exact() {
        let c = nechiporuk_lower(&BooleanMatrix::identity(4), 2, None).unwrap();
        assert_eq!(c.bound, 1);
        assert_eq!(c.exact_or, Some(4));
        assert!(c.freeness_verified && c.exact_for_2_free);
    }

    #[test]
    fn not_free_carries_witness() {
        match nechiporuk_lower(&BooleanMatrix::ones(3, 3), 2, None) {
            Err(BoundsError::NotKFree { k: 2, witness }) => {
                assert_eq!(witness.rows, vec![0, 1]);
                assert_eq!(witness.cols, vec![0, 1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn larger_k_rounds_up() {
        let c = nechiporuk_lower(&BooleanMatrix::ones(3, 3), 4, None).unwrap();
        assert_eq!(c.bound, 1);
        assert_eq!(c.exact_or, None);
        let c = nechiporuk_lower(&BooleanMatrix::ones(3, 5), 4, None).unwrap();
        assert_eq!(c.bound, 1);
    }

    #[test]
    fn budget_propagates() {
        let a = BooleanMatrix::from_fn(40, 41, |i, j| j == i || j == i + 1);
        assert!(matches!(
            nechiporuk_lower(&a, 2, Some(3)),
            Err(BoundsError::Matrix(MatrixError::BudgetExceeded { .. }))
        ));
    }
}
