//! Qudit-assisted compilation of qubit circuits.
//!
//! The crate is split into four layers:
//!
//! * [`circuit_ir`] holds the mixed-radix circuit representation, the native
//!   gate vocabulary, coupling maps and cost metrics.
//! * [`mrsim`] is a dense statevector engine over wires of heterogeneous
//!   dimension together with the subspace equivalence oracle.
//! * [`decomp`] builds multicontrolled gates for one-qubit-per-qudit layouts.
//! * [`embed`] packs several qubits into one qudit and lowers whole qubit
//!   circuits onto such layouts.

pub mod circuit_ir;
pub mod decomp;
pub mod embed;
pub mod linalg;
pub mod mrsim;

pub use circuit_ir::{CostReport, Gate, MixedRadixCircuit, WireSpec};
pub use mrsim::{EquivalenceVerdict, StateVector, SubspaceEmbedding};
