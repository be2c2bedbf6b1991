use serde::Serialize;

use super::BoundsError;
use crate::circuits::{NodeId, RectifierCircuit};
use crate::matrices::{BooleanMatrix, RectangleWitness};

/// Ceiling on candidate rectangles the exact solver will enumerate.
const CANDIDATE_LIMIT: usize = 1 << 20;

/// A depth-2 rectifier circuit in cover form: each rectangle is one middle
/// node with fan-in `cols` and fan-out `rows` (cost `|rows| + |cols|`),
/// each direct wire is a single input-to-output edge (cost 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Depth2Cover {
    pub rectangles: Vec<RectangleWitness>,
    pub direct_wires: Vec<(usize, usize)>,
    pub cost: u64,
}

impl Depth2Cover {
    fn recomputed_cost(&self) -> u64 {
        let rect: usize = self
            .rectangles
            .iter()
            .map(|r| r.rows.len() + r.cols.len())
            .sum();
        (rect + self.direct_wires.len()) as u64
    }

    /// Checks that every rectangle and wire lies on ones of `a`, that their
    /// union is exactly the 1-set of `a`, and that `cost` is consistent.
    pub fn covers_exactly(&self, a: &BooleanMatrix) -> bool {
        if self.cost != self.recomputed_cost() {
            return false;
        }
        let mut seen = BooleanMatrix::zeros(a.rows(), a.cols());
        for r in &self.rectangles {
            if !r.holds_in(a) {
                return false;
            }
            for &i in &r.rows {
                for &j in &r.cols {
                    seen.set(i, j, true);
                }
            }
        }
        for &(i, j) in &self.direct_wires {
            if i >= a.rows() || j >= a.cols() || !a.get(i, j) {
                return false;
            }
            seen.set(i, j, true);
        }
        seen == *a
    }

    /// The circuit this cover describes: inputs `0..cols`, outputs
    /// `cols..cols + rows`, then one middle node per rectangle.
    pub fn to_circuit(&self, rows: usize, cols: usize) -> Result<RectifierCircuit, BoundsError> {
        let node = |v: usize| v as NodeId;
        let mut edges = Vec::new();
        for (k, r) in self.rectangles.iter().enumerate() {
            let mid = rows + cols + k;
            edges.extend(r.cols.iter().map(|&j| (node(j), node(mid))));
            edges.extend(r.rows.iter().map(|&i| (node(mid), node(cols + i))));
        }
        edges.extend(
            self.direct_wires
                .iter()
                .map(|&(i, j)| (node(j), node(cols + i))),
        );
        Ok(RectifierCircuit::new(
            rows + cols + self.rectangles.len(),
            edges,
            (0..cols).map(node).collect(),
            (cols..cols + rows).map(node).collect(),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Or2Solution {
    pub cost: u64,
    pub cover: Depth2Cover,
    pub expanded: u64,
}

struct Candidate {
    rows: Vec<usize>,
    cols: Vec<usize>,
    mask: Vec<u64>,
    cost: u64,
    area: u64,
}

/// Minimum number of edges of a depth-2 rectifier circuit implementing `a`,
/// where inputs have no incoming and outputs no outgoing edges.
///
/// Branch and bound over covers of the 1-cells: the lowest uncovered cell is
/// covered either by a wire or by some all-ones rectangle containing it.
/// Only rectangles with at least two rows, two columns and five total
/// lines are candidates; every other rectangle is matched or beaten by
/// wires. The bound prices the uncovered cells at the best area-to-cost
/// ratio of any candidate.
pub fn exact_or2(a: &BooleanMatrix, node_budget: Option<u64>) -> Result<Or2Solution, BoundsError> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut cell_id = vec![usize::MAX; rows * cols];
    let mut cells = Vec::new();
    for i in 0..rows {
        for j in a.row_ones(i) {
            cell_id[i * cols + j] = cells.len();
            cells.push((i, j));
        }
    }
    let words = cells.len().div_ceil(64).max(1);
    let candidates = enumerate_candidates(a, &cell_id, words)?;

    let mut by_cell: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for (k, c) in candidates.iter().enumerate() {
        for (w, &bits) in c.mask.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                by_cell[w * 64 + b.trailing_zeros() as usize].push(k);
                b &= b - 1;
            }
        }
    }
    // Most area per edge first; ties by enumeration order.
    for list in &mut by_cell {
        list.sort_by(|&x, &y| {
            let (cx, cy) = (&candidates[x], &candidates[y]);
            (cy.area * cx.cost)
                .cmp(&(cx.area * cy.cost))
                .then(x.cmp(&y))
        });
    }
    let (ratio_num, ratio_den) =
        candidates
            .iter()
            .map(|c| (c.area, c.cost))
            .fold((1u64, 1u64), |(bn, bd), (n, d)| {
                if n * bd > bn * d {
                    (n, d)
                } else {
                    (bn, bd)
                }
            });

    let mut full = vec![0u64; words];
    for id in 0..cells.len() {
        full[id / 64] |= 1 << (id % 64);
    }

    let mut search = Search {
        candidates: &candidates,
        by_cell: &by_cell,
        ratio: (ratio_num, ratio_den),
        budget: node_budget,
        expanded: 0,
        best_cost: cells.len() as u64,
        best: Choice::all_wires(cells.len()),
        current: Vec::new(),
    };
    let finished = search.dfs(&full, 0);
    let cover = search.best.to_cover(&candidates, &cells);
    debug_assert!(cover.covers_exactly(a));
    if finished {
        Ok(Or2Solution {
            cost: search.best_cost,
            cover,
            expanded: search.expanded,
        })
    } else {
        Err(BoundsError::Or2BudgetExceeded {
            expanded: search.expanded,
            best: Box::new(cover),
        })
    }
}

fn enumerate_candidates(
    a: &BooleanMatrix,
    cell_id: &[usize],
    words: usize,
) -> Result<Vec<Candidate>, BoundsError> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = Vec::new();
    // Row subsets in lexicographic order, extended while >= 2 common columns.
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..rows)
        .rev()
        .map(|r| (vec![r], a.row_ones(r)))
        .filter(|(_, c)| c.len() >= 2)
        .collect();
    while let Some((srows, common)) = stack.pop() {
        if srows.len() >= 2 {
            let c = common.len();
            if c > 24 {
                return Err(BoundsError::InvalidInput(format!(
                    "exact depth-2 search needs at most 24 common columns, found {c}"
                )));
            }
            for subset in 1u32..(1 << c) {
                let t = subset.count_ones() as usize;
                if t < 2 || srows.len() + t < 5 {
                    continue;
                }
                let tcols: Vec<usize> = (0..c)
                    .filter(|&x| subset >> x & 1 == 1)
                    .map(|x| common[x])
                    .collect();
                let mut mask = vec![0u64; words];
                for &i in &srows {
                    for &j in &tcols {
                        let id = cell_id[i * cols + j];
                        mask[id / 64] |= 1 << (id % 64);
                    }
                }
                out.push(Candidate {
                    area: (srows.len() * t) as u64,
                    cost: (srows.len() + t) as u64,
                    rows: srows.clone(),
                    cols: tcols,
                    mask,
                });
                if out.len() > CANDIDATE_LIMIT {
                    return Err(BoundsError::InvalidInput(
                        "too many candidate rectangles for the exact depth-2 search".into(),
                    ));
                }
            }
        }
        let last = *srows.last().expect("nonempty");
        for r in (last + 1..rows).rev() {
            let next: Vec<usize> = common.iter().copied().filter(|&j| a.get(r, j)).collect();
            if next.len() >= 2 {
                let mut s = srows.clone();
                s.push(r);
                stack.push((s, next));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Step {
    Rect(usize),
    Wire(usize),
}

#[derive(Clone)]
struct Choice(Vec<Step>);

impl Choice {
    fn all_wires(cells: usize) -> Self {
        Choice((0..cells).map(Step::Wire).collect())
    }

    fn to_cover(&self, candidates: &[Candidate], cells: &[(usize, usize)]) -> Depth2Cover {
        let mut rectangles = Vec::new();
        let mut direct_wires = Vec::new();
        for step in &self.0 {
            match *step {
                Step::Rect(k) => rectangles.push(RectangleWitness {
                    rows: candidates[k].rows.clone(),
                    cols: candidates[k].cols.clone(),
                }),
                Step::Wire(c) => direct_wires.push(cells[c]),
            }
        }
        direct_wires.sort_unstable();
        let mut cover = Depth2Cover {
            rectangles,
            direct_wires,
            cost: 0,
        };
        cover.cost = cover.recomputed_cost();
        cover
    }
}

struct Search<'a> {
    candidates: &'a [Candidate],
    by_cell: &'a [Vec<usize>],
    ratio: (u64, u64),
    budget: Option<u64>,
    expanded: u64,
    best_cost: u64,
    best: Choice,
    current: Vec<Step>,
}

impl Search<'_> {
    /// Returns false when the budget ran out.
    fn dfs(&mut self, uncovered: &[u64], cost: u64) -> bool {
        self.expanded += 1;
        if self.budget.is_some_and(|b| self.expanded > b) {
            return false;
        }
        let left: u64 = uncovered.iter().map(|w| w.count_ones() as u64).sum();
        if left == 0 {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = Choice(self.current.clone());
            }
            return true;
        }
        let (num, den) = self.ratio;
        if cost + (left * den).div_ceil(num) >= self.best_cost {
            return true;
        }
        let (w, bits) = uncovered
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .expect("left > 0");
        let cell = w * 64 + bits.trailing_zeros() as usize;

        let mut next = uncovered.to_vec();
        for &k in &self.by_cell[cell] {
            let cand = &self.candidates[k];
            for ((n, u), m) in next.iter_mut().zip(uncovered).zip(&cand.mask) {
                *n = u & !m;
            }
            self.current.push(Step::Rect(k));
            let ok = self.dfs(&next, cost + cand.cost);
            self.current.pop();
            if !ok {
                return false;
            }
        }
        next.copy_from_slice(uncovered);
        next[cell / 64] &= !(1 << (cell % 64));
        self.current.push(Step::Wire(cell));
        let ok = self.dfs(&next, cost + 1);
        self.current.pop();
        ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle: minimum over all subsets of candidate rectangles
    /// (any all-ones rectangle with >= 2 rows and columns) plus wires for
    /// the cells they miss.
    fn brute_force(a: &BooleanMatrix) -> u64 {
        let (rows, cols) = (a.rows(), a.cols());
        let mut rects: Vec<(u64, u64)> = Vec::new(); // (cell mask, cost)
        for rs in 0u64..(1 << rows) {
            for cs in 0u64..(1 << cols) {
                if rs.count_ones() < 2 || cs.count_ones() < 2 {
                    continue;
                }
                let mut mask = 0u64;
                let mut ok = true;
                for i in 0..rows {
                    for j in 0..cols {
                        if rs >> i & 1 == 1 && cs >> j & 1 == 1 {
                            ok &= a.get(i, j);
                            mask |= 1 << (i * cols + j);
                        }
                    }
                }
                if ok {
                    rects.push((mask, (rs.count_ones() + cs.count_ones()) as u64));
                }
            }
        }
        let mut ones = 0u64;
        for i in 0..rows {
            for j in 0..cols {
                if a.get(i, j) {
                    ones |= 1 << (i * cols + j);
                }
            }
        }
        let mut best = ones.count_ones() as u64;
        for pick in 0u64..(1 << rects.len()) {
            let mut covered = 0;
            let mut cost = 0;
            for (k, &(m, c)) in rects.iter().enumerate() {
                if pick >> k & 1 == 1 {
                    covered |= m;
                    cost += c;
                }
            }
            best = best.min(cost + (ones & !covered).count_ones() as u64);
        }
        best
    }

    #[test]
    fn small_examples() {
        assert_eq!(brute_force(&BooleanMatrix::ones(2, 2)), 4);
        assert_eq!(brute_force(&BooleanMatrix::ones(3, 3)), 6);
        assert_eq!(brute_force(&BooleanMatrix::identity(3)), 3);

        assert_eq!(exact_or2(&BooleanMatrix::ones(2, 2), None).unwrap().cost, 4);
        let full = exact_or2(&BooleanMatrix::ones(3, 3), None).unwrap();
        assert_eq!(full.cost, 6);
        assert_eq!(full.cover.rectangles.len(), 1);
        let id = exact_or2(&BooleanMatrix::identity(3), None).unwrap();
        assert_eq!(id.cost, 3);
        assert_eq!(id.cover.direct_wires, vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(
            exact_or2(&BooleanMatrix::zeros(2, 2), None).unwrap().cost,
            0
        );
    }

    #[test]
    fn matches_brute_force_on_every_3x3() {
        for bits in 0u32..512 {
            let a = BooleanMatrix::from_fn(3, 3, |i, j| bits >> (i * 3 + j) & 1 == 1);
            let got = exact_or2(&a, None).unwrap();
            assert_eq!(got.cost, brute_force(&a), "{a:?}");
            assert!(got.cover.covers_exactly(&a));
        }
    }

    #[test]
    fn matches_brute_force_on_sparse_3x5() {
        for seed in 0..40u64 {
            let a =
                BooleanMatrix::from_fn(3, 5, |i, j| (seed * 31 + (i * 5 + j) as u64 * 7) % 5 < 2);
            assert_eq!(exact_or2(&a, None).unwrap().cost, brute_force(&a), "{a:?}");
        }
    }

    #[test]
    fn cover_circuit_implements_matrix() {
        let a = BooleanMatrix::from_rows(&[[1, 1, 1, 0], [1, 1, 1, 1], [1, 1, 1, 0], [0, 1, 0, 1]]);
        let sol = exact_or2(&a, None).unwrap();
        let c = sol.cover.to_circuit(4, 4).unwrap();
        assert_eq!(c.complexity() as u64, sol.cost);
        assert!(c.depth() <= 2);
        assert_eq!(c.implemented_matrix().unwrap(), a);
    }

    #[test]
    fn budget_returns_best_found() {
        let a = BooleanMatrix::ones(4, 5);
        match exact_or2(&a, Some(1)) {
            Err(BoundsError::Or2BudgetExceeded { best, .. }) => {
                assert!(best.covers_exactly(&a));
                assert!(best.cost <= 20);
            }
            other => panic!("{other:?}"),
        }
    }
}
