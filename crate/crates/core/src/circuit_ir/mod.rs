//! Mixed-radix circuit representation.

mod circuit;
mod cost;
mod gate;
pub mod json;
mod topology;

pub use circuit::{validate_circuit, MixedRadixCircuit, Violation, ViolationKind, WireSpec};
pub use cost::{cost_report, depth, entangling_depth, moments, xx_kappa, CostReport};
pub use gate::{std_gates, Gate, LocalBlock};
pub use topology::{spanning_tree, CouplingMap, SpanTree, TopologyError};
