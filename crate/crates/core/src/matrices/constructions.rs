use super::{is_k_free, BooleanMatrix, MatrixError};
use crate::finfield::{is_prime, FiniteField};

/// Largest Brown matrix side, `p^3 <= 2^20`.
pub const BROWN_ORDER_LIMIT: u64 = 1 << 20;
/// Largest norm matrix side, `q^t <= 2^12`.
pub const NORM_ORDER_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrownMatrix {
    pub matrix: BooleanMatrix,
    pub p: u64,
    pub delta: u64,
    /// `|{z in F_p^3 : z.z = delta}|`, the common row weight.
    pub sphere_size: u64,
    /// True when 3-freeness was established by search (always, when
    /// `delta` was auto-selected).
    pub three_free_verified: bool,
}

/// Number of `z in F_p^3` with `z_0^2 + z_1^2 + z_2^2 = delta (mod p)`.
pub fn sphere_size(p: u64, delta: u64) -> u64 {
    sphere_offsets(p, delta).len() as u64
}

fn sphere_offsets(p: u64, delta: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                if (a * a + b * b + c * c) % p == delta % p {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn distance_graph(p: u64, delta: u64) -> BooleanMatrix {
    let m = (p * p * p) as usize;
    let offsets = sphere_offsets(p, delta);
    let mut a = BooleanMatrix::zeros(m, m);
    for x0 in 0..p {
        for x1 in 0..p {
            for x2 in 0..p {
                let row = ((x0 * p + x1) * p + x2) as usize;
                for z in &offsets {
                    let y =
                        (((x0 + z[0]) % p * p + (x1 + z[1]) % p) * p + (x2 + z[2]) % p) as usize;
                    a.set(row, y, true);
                }
            }
        }
    }
    a
}

/// Distance graph on `F_p^3`: `A[x, y] = 1` iff `sum (x_i - y_i)^2 = delta`,
/// points in lexicographic order.
///
/// Without an explicit `delta`, nonzero residues are tried by decreasing
/// sphere size (ties: smallest first) and the first one whose matrix passes
/// a 3-freeness search is taken.
pub fn brown_matrix(p: u64, delta: Option<u64>) -> Result<BrownMatrix, MatrixError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(MatrixError::CompositeP(p));
    }
    let order = p * p * p;
    if order > BROWN_ORDER_LIMIT {
        return Err(MatrixError::OrderTooLarge {
            order,
            limit: BROWN_ORDER_LIMIT,
        });
    }
    if let Some(d) = delta {
        if d == 0 || d >= p {
            return Err(MatrixError::InvalidParameter(format!(
                "delta must be a nonzero residue mod {p}, got {d}"
            )));
        }
        return Ok(BrownMatrix {
            matrix: distance_graph(p, d),
            p,
            delta: d,
            sphere_size: sphere_size(p, d),
            three_free_verified: false,
        });
    }

    let mut candidates: Vec<(u64, u64)> = (1..p).map(|d| (sphere_size(p, d), d)).collect();
    candidates.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    for (size, d) in candidates {
        let matrix = distance_graph(p, d);
        if is_k_free(&matrix, 3)?.is_free() {
            return Ok(BrownMatrix {
                matrix,
                p,
                delta: d,
                sphere_size: size,
                three_free_verified: true,
            });
        }
    }
    Err(MatrixError::NoFreeDeltaFound(p))
}

/// Norm matrix over `F_{q^t}`: `A[x, y] = 1` iff `N(x + y) = 1`, elements in
/// coefficient-lexicographic order.
pub fn norm_matrix(q: u64, t: u32) -> Result<BooleanMatrix, MatrixError> {
    if !is_prime(q) {
        return Err(MatrixError::CompositeQ(q));
    }
    if t < 2 {
        return Err(MatrixError::InvalidParameter(format!(
            "norm matrix needs t >= 2, got {t}"
        )));
    }
    let order =
        q.checked_pow(t)
            .filter(|&o| o <= NORM_ORDER_LIMIT)
            .ok_or(MatrixError::OrderTooLarge {
                order: q.saturating_pow(t),
                limit: NORM_ORDER_LIMIT,
            })?;
    let field = FiniteField::new(q, t)?;
    let elements: Vec<_> = field.elements().collect();
    let norm_is_one = elements
        .iter()
        .map(|z| field.norm_value(z).map(|v| v == 1))
        .collect::<Result<Vec<bool>, _>>()?;

    let m = order as usize;
    let mut a = BooleanMatrix::zeros(m, m);
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let sum = x
                .coeffs()
                .iter()
                .zip(y.coeffs())
                .fold(0, |acc, (&u, &v)| acc * q + (u + v) % q);
            if norm_is_one[sum as usize] {
                a.set(i, j, true);
            }
        }
    }
    Ok(a)
}
