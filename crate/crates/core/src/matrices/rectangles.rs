use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::bitmatrix::{and_count, ones_of};
use super::{BooleanMatrix, MatrixError, PairIndexer};

/// Largest `C(m, 2)` for which the pair transform is materialized.
pub const MATERIALIZE_LIMIT: u64 = 1 << 16;

/// Column-pair counters live in a dense array up to this many pairs.
const DENSE_PAIR_LIMIT: usize = 1 << 24;

/// Row and column sets of an all-ones submatrix, both ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RectangleWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl RectangleWitness {
    /// Re-checks the witness against `a`.
    pub fn holds_in(&self, a: &BooleanMatrix) -> bool {
        a.is_all_ones_on(&self.rows, &self.cols)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freeness {
    Free,
    Contains(RectangleWitness),
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }

    pub fn witness(&self) -> Option<&RectangleWitness> {
        match self {
            Freeness::Free => None,
            Freeness::Contains(w) => Some(w),
        }
    }
}

/// Covering statistics of a matrix: `a_i` (row weights), `b_u` (rows
/// covering column pair `u`), `sigma = sum_i C(a_i, 2) = sum_u b_u` and the
/// 2-rectangle count `sum_u C(b_u, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleStats {
    pub sigma: u64,
    pub two_rectangles: u64,
    pub row_weights: Vec<u64>,
    /// Nonzero `b_u` keyed by the lexicographic rank of the column pair;
    /// only present when requested.
    pub pair_cover_counts: Option<BTreeMap<usize, u64>>,
}

fn choose2(x: u64) -> Option<u64> {
    x.checked_mul(x.saturating_sub(1)).map(|v| v / 2)
}

fn checked_sum(iter: impl Iterator<Item = Option<u64>>) -> Result<u64, MatrixError> {
    let mut acc = 0u64;
    for v in iter {
        acc = v
            .and_then(|v| acc.checked_add(v))
            .filter(|&s| s <= 1 << 63)
            .ok_or(MatrixError::CountOverflow)?;
    }
    Ok(acc)
}

enum PairCounts {
    Dense(Vec<u32>),
    Sparse(HashMap<usize, u64>),
}

/// Exact sigma and 2-rectangle count by accumulating, row by row, every
/// column pair the row covers.
pub fn count_2_rectangles(a: &BooleanMatrix) -> Result<RectangleStats, MatrixError> {
    count_impl(a, false)
}

/// [`count_2_rectangles`] with `pair_cover_counts` filled in.
pub fn count_2_rectangles_with_pairs(a: &BooleanMatrix) -> Result<RectangleStats, MatrixError> {
    count_impl(a, true)
}

fn count_impl(a: &BooleanMatrix, keep_pairs: bool) -> Result<RectangleStats, MatrixError> {
    let row_weights = a.row_weights();
    let sigma = checked_sum(row_weights.iter().map(|&w| choose2(w)))?;
    let idx = PairIndexer::new(a.cols());

    let mut counts = if idx.len() <= DENSE_PAIR_LIMIT {
        PairCounts::Dense(vec![0; idx.len()])
    } else {
        PairCounts::Sparse(HashMap::new())
    };
    let mut ones = Vec::new();
    for i in 0..a.rows() {
        ones.clear();
        ones.extend(ones_of(a.row_words(i)));
        for (x, &j1) in ones.iter().enumerate() {
            match &mut counts {
                PairCounts::Dense(v) => {
                    for &j2 in &ones[x + 1..] {
                        v[idx.rank(j1, j2)] += 1;
                    }
                }
                PairCounts::Sparse(h) => {
                    for &j2 in &ones[x + 1..] {
                        *h.entry(idx.rank(j1, j2)).or_insert(0) += 1;
                    }
                }
            }
        }
    }

    let (two_rectangles, covered, pairs) = match counts {
        PairCounts::Dense(v) => {
            let two = checked_sum(v.iter().map(|&b| choose2(b as u64)))?;
            let covered: u64 = v.iter().map(|&b| b as u64).sum();
            let pairs = keep_pairs.then(|| {
                v.iter()
                    .enumerate()
                    .filter(|(_, &b)| b > 0)
                    .map(|(u, &b)| (u, b as u64))
                    .collect()
            });
            (two, covered, pairs)
        }
        PairCounts::Sparse(h) => {
            let two = checked_sum(h.values().map(|&b| choose2(b)))?;
            let covered = h.values().sum();
            (two, covered, keep_pairs.then(|| h.into_iter().collect()))
        }
    };
    debug_assert_eq!(covered, sigma);

    Ok(RectangleStats {
        sigma,
        two_rectangles,
        row_weights,
        pair_cover_counts: pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    Materialize,
    StatsOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairTransform {
    Matrix(BooleanMatrix),
    Stats(RectangleStats),
}

/// The pair transform `B` of a square matrix `A`: rows are pairs of rows
/// of `A`, columns pairs of columns, and `B[b, a] = 1` iff the 2x2
/// submatrix `A[b, a]` is all ones.
pub fn pair_transform(
    a: &BooleanMatrix,
    mode: TransformMode,
) -> Result<PairTransform, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::NonSquareInput {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() < 2 {
        return Err(MatrixError::InvalidParameter(
            "pair transform needs m >= 2".into(),
        ));
    }
    match mode {
        TransformMode::StatsOnly => count_2_rectangles(a).map(PairTransform::Stats),
        TransformMode::Materialize => {
            let idx = PairIndexer::new(a.rows());
            let n = idx.len();
            if n as u64 > MATERIALIZE_LIMIT {
                return Err(MatrixError::MaterializeTooLarge { n: n as u64 });
            }
            let mut b = BooleanMatrix::zeros(n, n);
            let mut common = vec![0u64; a.stride()];
            let mut cols = Vec::new();
            for (r, (i1, i2)) in idx.iter().enumerate() {
                for ((c, x), y) in common.iter_mut().zip(a.row_words(i1)).zip(a.row_words(i2)) {
                    *c = x & y;
                }
                cols.clear();
                cols.extend(ones_of(&common));
                for (x, &j1) in cols.iter().enumerate() {
                    for &j2 in &cols[x + 1..] {
                        b.set(r, idx.rank(j1, j2), true);
                    }
                }
            }
            Ok(PairTransform::Matrix(b))
        }
    }
}

pub fn is_k_free(a: &BooleanMatrix, k: usize) -> Result<Freeness, MatrixError> {
    is_k_free_with_budget(a, k, None)
}

/// Searches for a `k x k` all-ones submatrix by depth-first enumeration of
/// increasing row tuples, carrying the AND of the chosen rows and pruning
/// every branch whose intersection drops below `k` columns. The witness
/// returned is the lexicographically first row tuple, with its first `k`
/// common columns.
///
/// `budget` caps node expansions; exceeding it yields
/// [`MatrixError::BudgetExceeded`], never a wrong answer.
pub fn is_k_free_with_budget(
    a: &BooleanMatrix,
    k: usize,
    budget: Option<u64>,
) -> Result<Freeness, MatrixError> {
    if k < 2 {
        return Err(MatrixError::InvalidK(k));
    }
    if k > a.rows() || k > a.cols() {
        return Ok(Freeness::Free);
    }
    let mut search = KSearch {
        a,
        by_col: a.transpose(),
        k,
        budget,
        expanded: 0,
        chosen: Vec::with_capacity(k),
    };
    Ok(match search.run()? {
        Some(w) => Freeness::Contains(w),
        None => Freeness::Free,
    })
}

struct KSearch<'a> {
    a: &'a BooleanMatrix,
    by_col: BooleanMatrix,
    k: usize,
    budget: Option<u64>,
    expanded: u64,
    chosen: Vec<usize>,
}

impl KSearch<'_> {
    fn run(&mut self) -> Result<Option<RectangleWitness>, MatrixError> {
        let k = self.k as u64;
        let pool: Vec<usize> = (0..self.a.rows())
            .filter(|&r| self.a.row_weight(r) >= k)
            .collect();
        self.extend(None, &pool)
    }

    fn tick(&mut self) -> Result<(), MatrixError> {
        self.expanded += 1;
        match self.budget {
            Some(b) if self.expanded > b => Err(MatrixError::BudgetExceeded {
                expanded: self.expanded,
            }),
            _ => Ok(()),
        }
    }

    /// `candidates` are ascending rows, each sharing at least `k` columns
    /// with `inter` (the AND of `chosen`, or everything when `None`).
    fn extend(
        &mut self,
        inter: Option<&[u64]>,
        candidates: &[usize],
    ) -> Result<Option<RectangleWitness>, MatrixError> {
        let need = self.k - self.chosen.len();
        for (pos, &r) in candidates.iter().enumerate() {
            if candidates.len() - pos < need {
                break;
            }
            self.tick()?;
            let row = self.a.row_words(r);
            let next: Vec<u64> = match inter {
                Some(s) => s.iter().zip(row).map(|(x, y)| x & y).collect(),
                None => row.to_vec(),
            };
            self.chosen.push(r);
            if need == 1 {
                return Ok(Some(RectangleWitness {
                    rows: self.chosen.clone(),
                    cols: ones_of(&next).take(self.k).collect(),
                }));
            }
            let rest = &candidates[pos + 1..];
            if rest.len() >= need - 1 {
                let sub = self.filter(&next, rest);
                if let Some(w) = self.extend(Some(&next), &sub)? {
                    return Ok(Some(w));
                }
            }
            self.chosen.pop();
        }
        Ok(None)
    }

    /// Rows of `pool` sharing at least `k` columns with `inter`.
    fn filter(&self, inter: &[u64], pool: &[usize]) -> Vec<usize> {
        let k = self.k;
        let width = inter.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        if width < k {
            return Vec::new();
        }
        let scan_cost = pool.len() * self.a.stride();
        let count_cost = width * k * self.by_col.stride();
        if scan_cost <= count_cost {
            return pool
                .iter()
                .copied()
                .filter(|&r| and_count(inter, self.a.row_words(r)) >= k as u64)
                .collect();
        }
        // Bit-sliced saturating counters over rows: level[l] holds the rows
        // adjacent to at least l + 1 of the columns seen so far.
        let words = self.by_col.stride();
        let mut level = vec![vec![0u64; words]; k];
        for c in ones_of(inter) {
            let col = self.by_col.row_words(c);
            for l in (1..k).rev() {
                let (lo, hi) = level.split_at_mut(l);
                for ((h, p), x) in hi[0].iter_mut().zip(&lo[l - 1]).zip(col) {
                    *h |= p & x;
                }
            }
            for (h, x) in level[0].iter_mut().zip(col) {
                *h |= x;
            }
        }
        let first = pool[0];
        ones_of(&level[k - 1]).filter(|&r| r >= first).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(a: &BooleanMatrix) -> (u64, u64) {
        let s = count_2_rectangles(a).unwrap();
        (s.sigma, s.two_rectangles)
    }

    #[test]
    fn count_examples() {
        assert_eq!(stats(&BooleanMatrix::ones(3, 3)), (9, 9));
        assert_eq!(stats(&BooleanMatrix::identity(5)), (0, 0));
    }

    #[test]
    fn pair_counts_on_request() {
        let a = BooleanMatrix::from_rows(&[[1, 1, 0], [1, 1, 1]]);
        let s = count_2_rectangles_with_pairs(&a).unwrap();
        let pairs = s.pair_cover_counts.unwrap();
        assert_eq!(pairs.get(&0), Some(&2));
        assert_eq!(pairs.get(&1), Some(&1));
        assert_eq!(pairs.get(&2), Some(&1));
        assert_eq!(s.two_rectangles, 1);
        assert!(count_2_rectangles(&a).unwrap().pair_cover_counts.is_none());
    }

    fn transform(a: &BooleanMatrix) -> BooleanMatrix {
        match pair_transform(a, TransformMode::Materialize).unwrap() {
            PairTransform::Matrix(b) => b,
            PairTransform::Stats(_) => unreachable!(),
        }
    }

    #[test]
    fn transform_examples() {
        assert_eq!(
            transform(&BooleanMatrix::ones(3, 3)),
            BooleanMatrix::ones(3, 3)
        );
        assert_eq!(
            transform(&BooleanMatrix::identity(3)),
            BooleanMatrix::zeros(3, 3)
        );
        let a = BooleanMatrix::from_rows(&[[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        let b = transform(&a);
        assert_eq!(b.weight(), 1);
        assert!(b.get(0, 0));
    }

    #[test]
    fn transform_errors() {
        assert_eq!(
            pair_transform(&BooleanMatrix::zeros(2, 3), TransformMode::StatsOnly),
            Err(MatrixError::NonSquareInput { rows: 2, cols: 3 })
        );
        assert_eq!(
            pair_transform(&BooleanMatrix::zeros(400, 400), TransformMode::Materialize),
            Err(MatrixError::MaterializeTooLarge { n: 79800 })
        );
        assert!(pair_transform(&BooleanMatrix::zeros(400, 400), TransformMode::StatsOnly).is_ok());
    }

    #[test]
    fn k_free_examples() {
        let r = is_k_free(&BooleanMatrix::ones(2, 2), 2).unwrap();
        assert_eq!(
            r,
            Freeness::Contains(RectangleWitness {
                rows: vec![0, 1],
                cols: vec![0, 1]
            })
        );
        assert!(is_k_free(&BooleanMatrix::identity(9), 2).unwrap().is_free());
        assert_eq!(
            is_k_free(&BooleanMatrix::ones(3, 3), 1),
            Err(MatrixError::InvalidK(1))
        );
        assert!(is_k_free(&BooleanMatrix::ones(3, 3), 4).unwrap().is_free());
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let a = BooleanMatrix::from_rows(&[
            [1, 0, 1, 1, 0],
            [0, 1, 1, 1, 1],
            [1, 1, 0, 1, 1],
            [0, 1, 1, 1, 1],
        ]);
        let w = is_k_free(&a, 2).unwrap();
        assert_eq!(
            w.witness().unwrap(),
            &RectangleWitness {
                rows: vec![0, 1],
                cols: vec![2, 3]
            }
        );
        let w3 = is_k_free(&a, 3).unwrap();
        assert_eq!(
            w3.witness().unwrap(),
            &RectangleWitness {
                rows: vec![1, 2, 3],
                cols: vec![1, 3, 4]
            }
        );
    }

    #[test]
    fn budget_reports_unknown() {
        // A path: every row has two ones, no two rows share two columns.
        let a = BooleanMatrix::from_fn(50, 51, |i, j| j == i || j == i + 1);
        assert!(is_k_free(&a, 2).unwrap().is_free());
        assert_eq!(
            is_k_free_with_budget(&a, 2, Some(10)),
            Err(MatrixError::BudgetExceeded { expanded: 11 })
        );
    }

    #[test]
    fn counting_filter_matches_scan() {
        // Wide, sparse-intersection input pushes filter() onto the counter path.
        let a = BooleanMatrix::from_fn(300, 40, |i, j| {
            (i * 7 + j * 3) % 11 < 4 || (i + j) % 13 == 0
        });
        let by_rows = is_k_free(&a, 3).unwrap();
        let w = by_rows
            .witness()
            .expect("dense enough to contain a 3-rectangle");
        assert!(w.holds_in(&a));
        // Brute force: first row triple with >= 3 common columns.
        let mut expect = None;
        'outer: for r1 in 0..300 {
            for r2 in r1 + 1..300 {
                for r3 in r2 + 1..300 {
                    let common: Vec<usize> = (0..40)
                        .filter(|&j| a.get(r1, j) && a.get(r2, j) && a.get(r3, j))
                        .collect();
                    if common.len() >= 3 {
                        expect = Some((vec![r1, r2, r3], common[..3].to_vec()));
                        break 'outer;
                    }
                }
            }
        }
        let (rows, cols) = expect.unwrap();
        assert_eq!(w.rows, rows);
        assert_eq!(w.cols, cols);
    }
}
