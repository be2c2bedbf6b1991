use super::{CircuitError, NodeId, RectifierCircuit};
use crate::matrices::{BooleanMatrix, MatrixError, PairIndexer};

/// Depth-1 circuit: one wire from input `j` to output `i` per 1-entry.
pub fn trivial_circuit(a: &BooleanMatrix) -> Result<RectifierCircuit, CircuitError> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut edges = Vec::with_capacity(a.weight() as usize);
    for i in 0..rows {
        for j in a.row_ones(i) {
            edges.push((j as NodeId, (cols + i) as NodeId));
        }
    }
    RectifierCircuit::new(
        rows + cols,
        edges,
        (0..cols as NodeId).collect(),
        (cols as NodeId..(cols + rows) as NodeId).collect(),
    )
}

/// Node numbering of [`depth3_complement_circuit`] for an `m x m` matrix
/// with `n = C(m, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Depth3Layout {
    pub m: usize,
    pub n: usize,
}

impl Depth3Layout {
    pub fn new(m: usize) -> Self {
        Depth3Layout {
            m,
            n: PairIndexer::new(m).len(),
        }
    }

    pub fn input(&self, pair: usize) -> usize {
        pair
    }

    /// Second-layer node standing for column `i` of `A`.
    pub fn column_node(&self, i: usize) -> usize {
        self.n + i
    }

    /// Third-layer node standing for row `j` of `A`.
    pub fn row_node(&self, j: usize) -> usize {
        self.n + self.m + j
    }

    pub fn output(&self, pair: usize) -> usize {
        self.n + 2 * self.m + pair
    }

    pub fn node_count(&self) -> usize {
        2 * self.n + 2 * self.m
    }

    /// Edge count of the construction: `4n + |complement(A)|`.
    pub fn expected_complexity(&self, complement_weight: u64) -> u64 {
        4 * self.n as u64 + complement_weight
    }
}

/// Depth-3 circuit implementing the complement of the pair transform of a
/// square `A`.
///
/// Inputs are the column pairs of `A`, outputs the row pairs (both in
/// lexicographic order). Input `a` feeds the two column nodes in `a`;
/// column node `i` feeds row node `j` iff `A[j, i] = 0`; row node `j` feeds
/// every output pair containing `j`. So input `a` reaches output `b` iff
/// the submatrix of `A` on rows `b` and columns `a` has a zero.
pub fn depth3_complement_circuit(a: &BooleanMatrix) -> Result<RectifierCircuit, CircuitError> {
    if !a.is_square() {
        return Err(CircuitError::NonSquareInput {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let m = a.rows();
    if m < 2 {
        return Err(MatrixError::InvalidParameter(format!(
            "depth-3 construction needs m >= 2, got {m}"
        ))
        .into());
    }
    let layout = Depth3Layout::new(m);
    let pairs = PairIndexer::new(m);
    let abar = a.complement();
    let node = |v: usize| v as NodeId;

    let mut edges = Vec::with_capacity(4 * layout.n + abar.weight() as usize);
    for (r, (i1, i2)) in pairs.iter().enumerate() {
        edges.push((node(layout.input(r)), node(layout.column_node(i1))));
        edges.push((node(layout.input(r)), node(layout.column_node(i2))));
    }
    let abar_cols = abar.transpose();
    for i in 0..m {
        for j in abar_cols.row_ones(i) {
            edges.push((node(layout.column_node(i)), node(layout.row_node(j))));
        }
    }
    for (r, (j1, j2)) in pairs.iter().enumerate() {
        edges.push((node(layout.row_node(j1)), node(layout.output(r))));
        edges.push((node(layout.row_node(j2)), node(layout.output(r))));
    }
    RectifierCircuit::new(
        layout.node_count(),
        edges,
        (0..layout.n).map(|r| node(layout.input(r))).collect(),
        (0..layout.n).map(|r| node(layout.output(r))).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_examples() {
        let z = trivial_circuit(&BooleanMatrix::zeros(2, 3)).unwrap();
        assert_eq!(z.complexity(), 0);
        assert_eq!(z.depth(), 0);
        assert_eq!(
            trivial_circuit(&BooleanMatrix::identity(3))
                .unwrap()
                .complexity(),
            3
        );
        let ones = trivial_circuit(&BooleanMatrix::ones(2, 2)).unwrap();
        assert_eq!(ones.complexity(), 4);
        assert_eq!(ones.depth(), 1);
    }

    #[test]
    fn depth3_identity() {
        let c = depth3_complement_circuit(&BooleanMatrix::identity(3)).unwrap();
        // 4n + |complement(I_3)| with n = 3
        assert_eq!(c.complexity(), 18);
        assert_eq!(c.depth(), 3);
        assert_eq!(c.inputs().len(), 3);
        assert_eq!(c.outputs().len(), 3);
    }

    #[test]
    fn depth3_all_ones_has_empty_middle() {
        let c = depth3_complement_circuit(&BooleanMatrix::ones(4, 4)).unwrap();
        assert_eq!(c.complexity(), 4 * 6);
        assert_eq!(c.depth(), 1);
    }

    #[test]
    fn depth3_rejects_non_square() {
        assert!(matches!(
            depth3_complement_circuit(&BooleanMatrix::zeros(2, 3)),
            Err(CircuitError::NonSquareInput { rows: 2, cols: 3 })
        ));
    }
}
