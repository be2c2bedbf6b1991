//! Rectifier (OR-) circuits: directed acyclic graphs with ordered input and
//! output nodes. A circuit implements the matrix `M` with `M[i, j] = 1` iff
//! some directed path (possibly of length zero) runs from input `j` to
//! output `i`.

mod build;
mod eval;
mod io;

pub use build::{depth3_complement_circuit, trivial_circuit, Depth3Layout};
pub use eval::{sampled_verify, PathFinder, SampleOutcome, MATERIALIZE_CELL_LIMIT};

use thiserror::Error;

use crate::matrices::MatrixError;

pub type NodeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("edge endpoint {node} is outside 0..{nodes}")]
    NodeOutOfRange { node: NodeId, nodes: usize },
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("graph has a directed cycle")]
    Cyclic,
    #[error("node {0} listed twice as an input")]
    DuplicateInput(NodeId),
    #[error("node {0} listed twice as an output")]
    DuplicateOutput(NodeId),
    #[error("{0} nodes exceed the 32-bit node id space")]
    TooManyNodes(usize),
    #[error("implemented matrix would have {inputs}x{outputs} entries, above the 2^26 limit")]
    TooLargeToMaterialize { inputs: usize, outputs: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquareInput { rows: usize, cols: usize },
    #[error("circuit file: {0}")]
    Parse(String),
    #[error("unsupported circuit file version {0}")]
    UnsupportedVersion(u64),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectifierCircuit {
    nodes: usize,
    /// Sorted by `(from, to)`, duplicate-free.
    edges: Vec<(NodeId, NodeId)>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    /// `offsets[v]..offsets[v + 1]` indexes the out-edges of `v` in `edges`.
    offsets: Vec<usize>,
    topo: Vec<NodeId>,
}

impl RectifierCircuit {
    /// Validates and canonicalizes: endpoints in range, no duplicate edges,
    /// acyclic, duplicate-free input and output lists. Edge order is free.
    pub fn new(
        nodes: usize,
        mut edges: Vec<(NodeId, NodeId)>,
        inputs: Vec<NodeId>,
        outputs: Vec<NodeId>,
    ) -> Result<Self, CircuitError> {
        if nodes > NodeId::MAX as usize {
            return Err(CircuitError::TooManyNodes(nodes));
        }
        let in_range = |v: NodeId| {
            if (v as usize) < nodes {
                Ok(())
            } else {
                Err(CircuitError::NodeOutOfRange { node: v, nodes })
            }
        };
        for &(u, v) in &edges {
            in_range(u)?;
            in_range(v)?;
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(CircuitError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut seen = vec![false; nodes];
        for &v in &inputs {
            in_range(v)?;
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(CircuitError::DuplicateInput(v));
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        for &v in &outputs {
            in_range(v)?;
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(CircuitError::DuplicateOutput(v));
            }
        }

        let mut offsets = vec![0usize; nodes + 1];
        for &(u, _) in &edges {
            offsets[u as usize + 1] += 1;
        }
        for v in 0..nodes {
            offsets[v + 1] += offsets[v];
        }
        let topo = kahn(nodes, &edges, &offsets)?;
        Ok(RectifierCircuit {
            nodes,
            edges,
            inputs,
            outputs,
            offsets,
            topo,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    /// Number of edges.
    pub fn complexity(&self) -> usize {
        self.edges.len()
    }

    pub fn successors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let v = v as usize;
        self.edges[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&(_, w)| w)
    }

    /// A topological order, deterministic for a given edge set.
    pub fn topological_order(&self) -> &[NodeId] {
        &self.topo
    }

    /// Length in edges of the longest directed path; 0 when edgeless.
    pub fn depth(&self) -> usize {
        let mut dist = vec![0usize; self.nodes];
        let mut best = 0;
        for &u in &self.topo {
            let du = dist[u as usize];
            best = best.max(du);
            for w in self.successors(u) {
                let dw = &mut dist[w as usize];
                *dw = (*dw).max(du + 1);
            }
        }
        best
    }

    /// Copy of the circuit with the edge at `index` (in canonical order)
    /// removed.
    pub fn without_edge(&self, index: usize) -> Result<Self, CircuitError> {
        let mut edges = self.edges.clone();
        edges.remove(index);
        RectifierCircuit::new(self.nodes, edges, self.inputs.clone(), self.outputs.clone())
    }
}

fn kahn(
    nodes: usize,
    edges: &[(NodeId, NodeId)],
    offsets: &[usize],
) -> Result<Vec<NodeId>, CircuitError> {
    let mut indeg = vec![0u32; nodes];
    for &(_, v) in edges {
        indeg[v as usize] += 1;
    }
    let mut order: Vec<NodeId> = (0..nodes as NodeId)
        .filter(|&v| indeg[v as usize] == 0)
        .collect();
    let mut head = 0;
    while head < order.len() {
        let u = order[head] as usize;
        head += 1;
        for &(_, w) in &edges[offsets[u]..offsets[u + 1]] {
            let d = &mut indeg[w as usize];
            *d -= 1;
            if *d == 0 {
                order.push(w);
            }
        }
    }
    if order.len() == nodes {
        Ok(order)
    } else {
        Err(CircuitError::Cyclic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit() {
        let c = RectifierCircuit::new(0, vec![], vec![], vec![]).unwrap();
        assert_eq!(c.complexity(), 0);
        assert_eq!(c.depth(), 0);
        let lone = RectifierCircuit::new(3, vec![], vec![0], vec![1, 2]).unwrap();
        assert_eq!(lone.depth(), 0);
    }

    #[test]
    fn validation() {
        assert_eq!(
            RectifierCircuit::new(2, vec![(0, 2)], vec![0], vec![1]),
            Err(CircuitError::NodeOutOfRange { node: 2, nodes: 2 })
        );
        assert_eq!(
            RectifierCircuit::new(2, vec![(0, 1), (0, 1)], vec![0], vec![1]),
            Err(CircuitError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            RectifierCircuit::new(3, vec![(0, 1), (1, 2), (2, 1)], vec![0], vec![2]),
            Err(CircuitError::Cyclic)
        );
        assert_eq!(
            RectifierCircuit::new(1, vec![(0, 0)], vec![0], vec![0]),
            Err(CircuitError::Cyclic)
        );
        assert_eq!(
            RectifierCircuit::new(2, vec![], vec![0, 0], vec![1]),
            Err(CircuitError::DuplicateInput(0))
        );
        assert_eq!(
            RectifierCircuit::new(2, vec![], vec![0], vec![1, 1]),
            Err(CircuitError::DuplicateOutput(1))
        );
        // A node may be both an input and an output.
        assert!(RectifierCircuit::new(1, vec![], vec![0], vec![0]).is_ok());
    }

    #[test]
    fn canonical_edge_order() {
        let a =
            RectifierCircuit::new(4, vec![(2, 3), (0, 2), (1, 2)], vec![0, 1], vec![3]).unwrap();
        let b =
            RectifierCircuit::new(4, vec![(0, 2), (1, 2), (2, 3)], vec![0, 1], vec![3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges(), &[(0, 2), (1, 2), (2, 3)]);
    }

    #[test]
    fn longest_path() {
        // 0 -> 1 -> 2 -> 3 and a shortcut 0 -> 3
        let c = RectifierCircuit::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)], vec![0], vec![3])
            .unwrap();
        assert_eq!(c.depth(), 3);
        assert_eq!(c.without_edge(2).unwrap().depth(), 1);
    }
}
