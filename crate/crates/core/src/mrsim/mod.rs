//! Mixed-radix statevector simulation and the subspace equivalence oracle.

mod embedding;
mod oracle;
mod state;
pub mod targets;

pub use embedding::{measure_embedded_qubit, QubitOutcome, SubspaceEmbedding};
pub use oracle::{equivalent_on_subspace, oracle_workload_bytes, subspace_block, EquivalenceVerdict};
pub use state::{apply_gate, circuit_columns, circuit_unitary, decode, encode, strides, SimError, StateVector};
