use rand::Rng;
use rayon::prelude::*;

use super::{CircuitError, NodeId, RectifierCircuit};
use crate::matrices::BooleanMatrix;
use crate::rng::seeded;

/// Largest `|inputs| * |outputs|` that [`RectifierCircuit::implemented_matrix`]
/// will materialize.
pub const MATERIALIZE_CELL_LIMIT: usize = 1 << 26;

/// Inputs handled per reachability pass, in 64-bit words.
const CHUNK_WORDS: usize = 64;

impl RectifierCircuit {
    /// The matrix this circuit implements, by propagating bitsets of
    /// reaching inputs along a topological order. Inputs are processed in
    /// independent blocks of 4096 (in parallel); the result does not depend
    /// on scheduling.
    pub fn implemented_matrix(&self) -> Result<BooleanMatrix, CircuitError> {
        let (ni, no) = (self.inputs.len(), self.outputs.len());
        if ni.saturating_mul(no) > MATERIALIZE_CELL_LIMIT {
            return Err(CircuitError::TooLargeToMaterialize {
                inputs: ni,
                outputs: no,
            });
        }
        let total_words = ni.div_ceil(64);
        let chunks: Vec<usize> = (0..total_words).step_by(CHUNK_WORDS).collect();
        let blocks: Vec<(usize, usize, Vec<u64>)> = chunks
            .into_par_iter()
            .map(|w0| {
                let width = CHUNK_WORDS.min(total_words - w0);
                (w0, width, self.reach_block(w0 * 64, width))
            })
            .collect();

        let mut m = BooleanMatrix::zeros(no, ni);
        for (w0, width, block) in blocks {
            for (i, &out) in self.outputs.iter().enumerate() {
                let src = &block[out as usize * width..(out as usize + 1) * width];
                m.row_words_mut(i)[w0..w0 + width].copy_from_slice(src);
            }
        }
        Ok(m)
    }

    /// Per node, the bitset of inputs `first..first + 64 * width` reaching it.
    fn reach_block(&self, first: usize, width: usize) -> Vec<u64> {
        let mut reach = vec![0u64; self.nodes * width];
        let last = (first + 64 * width).min(self.inputs.len());
        for pos in first..last {
            let b = pos - first;
            reach[self.inputs[pos] as usize * width + b / 64] |= 1 << (b % 64);
        }
        let mut buf = vec![0u64; width];
        for &u in &self.topo {
            let u = u as usize;
            buf.copy_from_slice(&reach[u * width..(u + 1) * width]);
            if buf.iter().all(|&w| w == 0) {
                continue;
            }
            for &(_, v) in &self.edges[self.offsets[u]..self.offsets[u + 1]] {
                let dst = &mut reach[v as usize * width..(v as usize + 1) * width];
                for (d, s) in dst.iter_mut().zip(&buf) {
                    *d |= s;
                }
            }
        }
        reach
    }
}

/// Point-to-point path queries by bidirectional breadth-first search,
/// always expanding the side whose frontier has fewer incident edges.
pub struct PathFinder<'a> {
    circuit: &'a RectifierCircuit,
    rev_offsets: Vec<usize>,
    rev_sources: Vec<NodeId>,
    fwd_mark: Vec<u32>,
    bwd_mark: Vec<u32>,
    epoch: u32,
}

impl<'a> PathFinder<'a> {
    pub fn new(circuit: &'a RectifierCircuit) -> Self {
        let n = circuit.nodes;
        let mut rev_offsets = vec![0usize; n + 1];
        for &(_, v) in &circuit.edges {
            rev_offsets[v as usize + 1] += 1;
        }
        for v in 0..n {
            rev_offsets[v + 1] += rev_offsets[v];
        }
        let mut fill = rev_offsets.clone();
        let mut rev_sources = vec![0; circuit.edges.len()];
        for &(u, v) in &circuit.edges {
            rev_sources[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        PathFinder {
            circuit,
            rev_offsets,
            rev_sources,
            fwd_mark: vec![0; n],
            bwd_mark: vec![0; n],
            epoch: 0,
        }
    }

    fn out_degree(&self, v: NodeId) -> usize {
        self.circuit.offsets[v as usize + 1] - self.circuit.offsets[v as usize]
    }

    fn in_degree(&self, v: NodeId) -> usize {
        self.rev_offsets[v as usize + 1] - self.rev_offsets[v as usize]
    }

    /// Whether a directed path (possibly empty) leads from `from` to `to`.
    pub fn connected(&mut self, from: NodeId, to: NodeId) -> bool {
        if from == to {
            return true;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.fwd_mark.fill(0);
            self.bwd_mark.fill(0);
            self.epoch = 1;
        }
        let e = self.epoch;
        self.fwd_mark[from as usize] = e;
        self.bwd_mark[to as usize] = e;
        let mut fwd = vec![from];
        let mut bwd = vec![to];
        let mut next = Vec::new();
        while !fwd.is_empty() && !bwd.is_empty() {
            let fwd_cost: usize = fwd.iter().map(|&v| self.out_degree(v)).sum();
            let bwd_cost: usize = bwd.iter().map(|&v| self.in_degree(v)).sum();
            next.clear();
            if fwd_cost <= bwd_cost {
                for &u in &fwd {
                    for w in self.circuit.successors(u) {
                        if self.bwd_mark[w as usize] == e {
                            return true;
                        }
                        if self.fwd_mark[w as usize] != e {
                            self.fwd_mark[w as usize] = e;
                            next.push(w);
                        }
                    }
                }
                std::mem::swap(&mut fwd, &mut next);
            } else {
                for &v in &bwd {
                    let (lo, hi) = (
                        self.rev_offsets[v as usize],
                        self.rev_offsets[v as usize + 1],
                    );
                    for &u in &self.rev_sources[lo..hi] {
                        if self.fwd_mark[u as usize] == e {
                            return true;
                        }
                        if self.bwd_mark[u as usize] != e {
                            self.bwd_mark[u as usize] = e;
                            next.push(u);
                        }
                    }
                }
                std::mem::swap(&mut bwd, &mut next);
            }
        }
        false
    }

    /// Whether input position `col` reaches output position `row`.
    pub fn entry(&mut self, row: usize, col: usize) -> bool {
        let (from, to) = (self.circuit.inputs[col], self.circuit.outputs[row]);
        self.connected(from, to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleOutcome {
    Pass {
        samples: u64,
    },
    Mismatch {
        row: usize,
        col: usize,
        expected: bool,
        found: bool,
    },
}

impl SampleOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, SampleOutcome::Pass { .. })
    }
}

/// Compares `samples` uniformly random (output, input) positions of `c`
/// against `oracle(row, col)`. The positions depend only on `seed`.
pub fn sampled_verify(
    c: &RectifierCircuit,
    mut oracle: impl FnMut(usize, usize) -> bool,
    samples: u64,
    seed: u64,
) -> SampleOutcome {
    let (rows, cols) = (c.outputs().len(), c.inputs().len());
    if rows == 0 || cols == 0 {
        return SampleOutcome::Pass { samples: 0 };
    }
    let mut rng = seeded(seed);
    let mut finder = PathFinder::new(c);
    for _ in 0..samples {
        let row = rng.random_range(0..rows);
        let col = rng.random_range(0..cols);
        let expected = oracle(row, col);
        let found = finder.entry(row, col);
        if expected != found {
            return SampleOutcome::Mismatch {
                row,
                col,
                expected,
                found,
            };
        }
    }
    SampleOutcome::Pass { samples }
}
