//! Several qubits per qudit.
//!
//! A qudit of dimension `d ≥ 2^b` holds `b` qubits on its first `2^b` levels,
//! level `k` carrying the binary expansion of `k` with the first slot most
//! significant. Single-qubit gates become two-level rotations, and
//! multi-qubit phases become phases on the level sets selected by a mask.

mod demos;
mod layout;
mod lift;
mod mask;
mod paired;
mod qubit;
mod transpile;

pub use demos::{
    compress_3q_to_2qutrits, compression_truth_table, deutsch_circuit, deutsch_preparation, deutsch_qubit_circuit,
    run_deutsch, scaling_csv, scaling_table, CompressionRow, DeutschOracle, DeutschOutcome, ScalingRow,
};
pub use layout::{canonical_layouts, count_mappings, direct_mapping, slot_bit, QubitLayout};
pub use lift::{lift_single_qubit_gate, lifted_gates, two_level_gates, TwoLevelOp};
pub use mask::{
    mask_controlled_phase, mask_phase_gates, masks_for_qubits, BackendFamily, ControlMask, NativeBackend,
    SlotCondition,
};
pub use paired::{embedded_cnz, PairedTopology};
pub use qubit::{iswap, matrix_from_value, matrix_to_value, QubitCircuit, QubitCircuitError, QubitGate, SingleQubitGate};
pub use transpile::{
    heuristic_mapping, layout_target, optimize_mapping, transpile, transpile_with, verify_transpiled, Objective,
    DEFAULT_BUDGET,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbedError {
    #[error("{0}")]
    InvalidLayout(String),
    #[error("{n} qubits do not fit {m} qudits of {b} qubits each")]
    Capacity { n: usize, m: usize, b: usize },
    #[error("{0}")]
    InvalidMask(String),
    #[error("masks span {0} qudits; direct synthesis handles at most two")]
    UnsupportedArity(usize),
    #[error("insufficient qudit dimension: {needed}")]
    InsufficientDimension { needed: String },
    #[error("{0}")]
    UnsupportedGate(String),
    #[error("n = {n} is not b·m = {b}·{m}")]
    NotDivisible { n: usize, b: usize, m: usize },
    #[error("{count} canonical layouts exceed the budget of {budget}; use the heuristic mapping instead")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("mapping count overflows 128 bits")]
    Overflow,
}
