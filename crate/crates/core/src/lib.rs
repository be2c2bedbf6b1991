//! Explicit Boolean matrix families whose complements are much cheaper (or
//! much dearer) for rectifier circuits, together with the machinery to
//! build those circuits and certify both sides of the gap.
//!
//! * [`finfield`]: prime and extension field arithmetic with the norm map.
//! * [`matrices`]: bit-packed matrices, Brown and norm constructions, the
//!   pair transform, 2-rectangle counting and k-freeness search.
//! * [`circuits`]: rectifier circuits as DAGs, the trivial and depth-3
//!   constructions, reachability evaluation and sampled verification.
//! * [`bounds`]: Nechiporuk certificates, an exact depth-2 solver, the
//!   rectangle-counting certificate and the separation report.

pub mod bounds;
pub mod circuits;
pub mod finfield;
pub mod matrices;
pub mod rng;

pub use circuits::{CircuitError, RectifierCircuit};
pub use finfield::{FieldElement, FiniteField};
pub use matrices::{BooleanMatrix, MatrixError, PairIndexer, RectangleStats, RectangleWitness};
