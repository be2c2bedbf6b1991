use serde::Serialize;

use super::BoundsError;
use crate::matrices::{count_2_rectangles, BooleanMatrix};

/// Evidence for the 2-rectangle counting chain on a square matrix. Every
/// comparison is an exact integer inequality obtained by clearing
/// denominators; [`CountingCertificate::from_counts`] recomputes them from
/// the four counts alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingCertificate {
    pub n: u64,
    pub weight: u64,
    pub sigma: u64,
    pub two_rectangles: u64,
    /// `sigma >= |A|^2/(2n) - |A|/2`, as `2n sigma + n|A| >= |A|^2`.
    pub sigma_convexity: bool,
    /// `count >= sigma^2/(n(n-1)) - sigma/2`, as
    /// `2n(n-1) count + n(n-1) sigma >= 2 sigma^2`.
    pub count_convexity: bool,
    /// `|A| >= 2 n^{3/2}`, as `|A|^2 >= 4 n^3`.
    pub dense: bool,
    /// `sigma >= |A|^2/(4n)`; evaluated only when `dense`.
    pub sigma_quarter: Option<bool>,
    /// `count >= sigma^2/(2n^2)`; evaluated only when `dense`.
    pub count_half_square: Option<bool>,
}

impl CountingCertificate {
    pub fn from_counts(
        n: u64,
        weight: u64,
        sigma: u64,
        two_rectangles: u64,
    ) -> Result<Self, BoundsError> {
        let ovf = || BoundsError::ArithmeticOverflow;
        let (n, w, s, c) = (
            n as u128,
            weight as u128,
            sigma as u128,
            two_rectangles as u128,
        );
        let mul = |a: u128, b: u128| a.checked_mul(b).ok_or_else(ovf);
        let add = |a: u128, b: u128| a.checked_add(b).ok_or_else(ovf);

        let w2 = mul(w, w)?;
        let s2 = mul(s, s)?;
        let pairs = n * n.saturating_sub(1);

        let sigma_convexity = add(mul(2 * n, s)?, mul(n, w)?)? >= w2;
        let count_convexity = add(mul(mul(2, pairs)?, c)?, mul(pairs, s)?)? >= mul(2, s2)?;
        let dense = w2 >= mul(4, mul(n, mul(n, n)?)?)?;
        let (sigma_quarter, count_half_square) = if dense {
            (
                Some(mul(4 * n, s)? >= w2),
                Some(mul(mul(2, mul(n, n)?)?, c)? >= s2),
            )
        } else {
            (None, None)
        };
        Ok(CountingCertificate {
            n: n as u64,
            weight,
            sigma,
            two_rectangles,
            sigma_convexity,
            count_convexity,
            dense,
            sigma_quarter,
            count_half_square,
        })
    }

    /// All evaluated comparisons hold.
    pub fn passed(&self) -> bool {
        self.sigma_convexity
            && self.count_convexity
            && self.sigma_quarter.unwrap_or(true)
            && self.count_half_square.unwrap_or(true)
    }
}

pub fn counting_certificate(a: &BooleanMatrix) -> Result<CountingCertificate, BoundsError> {
    if !a.is_square() {
        return Err(BoundsError::InvalidInput(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let stats = count_2_rectangles(a)?;
    CountingCertificate::from_counts(
        a.rows() as u64,
        a.weight(),
        stats.sigma,
        stats.two_rectangles,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_4x4() {
        let c = counting_certificate(&BooleanMatrix::ones(4, 4)).unwrap();
        assert_eq!((c.weight, c.sigma, c.two_rectangles), (16, 24, 36));
        assert!(c.dense);
        assert_eq!(c.sigma_quarter, Some(true));
        assert_eq!(c.count_half_square, Some(true));
        assert!(c.passed());
    }

    #[test]
    fn identity_is_sparse() {
        let c = counting_certificate(&BooleanMatrix::identity(4)).unwrap();
        assert_eq!((c.sigma, c.two_rectangles), (0, 0));
        assert!(!c.dense);
        assert!(c.sigma_convexity && c.count_convexity);
        assert_eq!(c.sigma_quarter, None);
        assert!(c.passed());
    }

    #[test]
    fn fabricated_counts_fail() {
        // sigma far below the convexity floor for |A| = 16, n = 4
        let c = CountingCertificate::from_counts(4, 16, 5, 0).unwrap();
        assert!(!c.sigma_convexity);
        assert!(!c.passed());
    }

    #[test]
    fn single_cell() {
        let c = counting_certificate(&BooleanMatrix::ones(1, 1)).unwrap();
        assert!(c.passed());
    }

    #[test]
    fn rejects_rectangular() {
        assert!(counting_certificate(&BooleanMatrix::ones(2, 3)).is_err());
    }
}
