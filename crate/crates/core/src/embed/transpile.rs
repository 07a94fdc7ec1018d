use super::layout::{canonical_layouts, count_mappings, slot_bit, QubitLayout};
use super::lift::lifted_gates;
use super::mask::{BackendFamily, NativeBackend};
use super::paired::{controlled_ops, multi_z_gates, ops_gates, PairedTopology, QubitOp};
use super::qubit::{QubitCircuit, QubitGate};
use super::EmbedError;
use crate::circuit_ir::std_gates::rx;
use crate::circuit_ir::{cost_report, CostReport, Gate, MixedRadixCircuit};
use crate::linalg::{hadamard, pauli_x, Mat2, C64, I, ONE, ZERO};
use crate::mrsim::{equivalent_on_subspace, targets, EquivalenceVerdict, SimError, SubspaceEmbedding};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    #[default]
    Entangling,
    Depth,
}

fn s_gate() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, I)
}

fn cx_ops(control: usize, target: usize) -> Vec<QubitOp> {
    controlled_ops(&[control], target, &pauli_x())
}

fn check_layout(qc: &QubitCircuit, layout: &QubitLayout) -> Result<(), EmbedError> {
    if qc.num_qubits > layout.m * layout.b {
        return Err(EmbedError::Capacity { n: qc.num_qubits, m: layout.m, b: layout.b });
    }
    if qc.num_qubits != layout.num_qubits() {
        return Err(EmbedError::InvalidLayout(format!(
            "layout places {} qubits, circuit has {}",
            layout.num_qubits(),
            qc.num_qubits
        )));
    }
    Ok(())
}

fn lower_gate(
    g: &QubitGate,
    layout: &QubitLayout,
    backend: NativeBackend,
    topology: PairedTopology,
) -> Result<Vec<Gate>, EmbedError> {
    let ops = |ops: Vec<QubitOp>| ops_gates(&ops, layout, backend, topology);
    match g {
        QubitGate::Single { qubit, gate } => {
            let (w, s) = layout.assignment[*qubit];
            Ok(lifted_gates(w, &gate.matrix(), s, layout.b))
        }
        QubitGate::CZ { a, b } => multi_z_gates(&[*a, *b], layout, backend, topology),
        QubitGate::CX { control, target } => ops(cx_ops(*control, *target)),
        QubitGate::ISwap { a, b } => {
            let ((wa, sa), (wb, sb)) = (layout.assignment[*a], layout.assignment[*b]);
            if wa == wb {
                // i·X between the two levels of every pair where the slots read 01 and 10.
                let bb = layout.b;
                let (ba, bbit) = (1 << (bb - 1 - sa), 1 << (bb - 1 - sb));
                Ok((0..1usize << bb)
                    .filter(|&x| slot_bit(x, sa, bb) == 0 && slot_bit(x, sb, bb) == 1)
                    .map(|x| rx(wa, x, x ^ ba ^ bbit, -PI))
                    .collect())
            } else {
                let mut v = vec![QubitOp::Single(*b, hadamard())];
                v.extend(cx_ops(*b, *a));
                v.extend(cx_ops(*a, *b));
                v.push(QubitOp::Single(*a, hadamard()));
                v.push(QubitOp::Single(*a, s_gate()));
                v.push(QubitOp::Single(*b, s_gate()));
                ops(v)
            }
        }
        QubitGate::CnZ { controls, target } => {
            let all: Vec<usize> = controls.iter().copied().chain([*target]).collect();
            multi_z_gates(&all, layout, backend, topology)
        }
        QubitGate::CnX { controls, target } => ops(controlled_ops(controls, *target, &pauli_x())),
        QubitGate::CnU { controls, target, u } => ops(controlled_ops(controls, *target, u)),
    }
}

/// Lowers a qubit circuit onto `layout`, with a non-default ladder shape for
/// multicontrolled gates over whole qudits.
pub fn transpile_with(
    qc: &QubitCircuit,
    layout: &QubitLayout,
    backend: NativeBackend,
    topology: PairedTopology,
) -> Result<(MixedRadixCircuit, CostReport), EmbedError> {
    check_layout(qc, layout)?;
    qc.validate().map_err(|e| EmbedError::UnsupportedGate(e.to_string()))?;
    let mut c = MixedRadixCircuit::new(&layout.dims());
    for g in &qc.gates {
        c.extend(lower_gate(g, layout, backend, topology)?);
    }
    let cost = cost_report(&c);
    Ok((c, cost))
}

pub fn transpile(
    qc: &QubitCircuit,
    layout: &QubitLayout,
    backend: NativeBackend,
) -> Result<(MixedRadixCircuit, CostReport), EmbedError> {
    transpile_with(qc, layout, backend, PairedTopology::Linear)
}

/// The circuit's unitary expressed on all `m·b` embedded qubits in
/// `qudit·b + slot` order; unused positions are idle.
pub fn layout_target(qc: &QubitCircuit, layout: &QubitLayout) -> DMatrix<C64> {
    let phys: Vec<usize> = (0..qc.num_qubits).map(|q| layout.physical(q)).collect();
    targets::on_qubits(layout.m * layout.b, &phys, &qc.unitary())
}

/// Subspace oracle for a circuit emitted by [`transpile`].
pub fn verify_transpiled(
    circuit: &MixedRadixCircuit,
    qc: &QubitCircuit,
    layout: &QubitLayout,
    tol: f64,
) -> Result<EquivalenceVerdict, SimError> {
    let emb = SubspaceEmbedding::binary(&circuit.dims(), layout.b)?;
    equivalent_on_subspace(circuit, &layout_target(qc, layout), &emb, tol)
}

fn score(cost: &CostReport, objective: Objective) -> (usize, usize) {
    match objective {
        Objective::Entangling => (cost.entangling_count, cost.depth),
        Objective::Depth => (cost.depth, cost.entangling_count),
    }
}

/// Exhaustive search over canonical layouts. Spare positions (`n < m·b`) are
/// filled with idle qubits.
pub fn optimize_mapping(
    qc: &QubitCircuit,
    m: usize,
    b: usize,
    d: usize,
    family: BackendFamily,
    objective: Objective,
    budget: u128,
) -> Result<(QubitLayout, CostReport), EmbedError> {
    let n = qc.num_qubits;
    if n > m * b {
        return Err(EmbedError::Capacity { n, m, b });
    }
    QubitLayout::sequential(n, m, b, d)?;
    let count = count_mappings(m * b, b, m)?;
    if count > budget {
        return Err(EmbedError::BudgetExceeded { count, budget });
    }
    canonical_layouts(m, b, d)
        .into_par_iter()
        .map(|full| {
            let layout = QubitLayout { assignment: full.assignment[..n].to_vec(), ..full };
            let backend = NativeBackend::for_layout(family, &layout);
            let (_, cost) = transpile(qc, &layout, backend)?;
            Ok((score(&cost, objective), layout, cost))
        })
        .collect::<Result<Vec<_>, EmbedError>>()?
        .into_iter()
        .min_by(|x, y| (x.0, &x.1.assignment).cmp(&(y.0, &y.1.assignment)))
        .map(|(_, l, c)| (l, c))
        .ok_or(EmbedError::Capacity { n, m, b })
}

/// Greedy grouping by co-occurrence weight: each qudit is seeded with the
/// lowest free qubit and filled with the free qubits sharing the most
/// multi-qubit gates with the group.
pub fn heuristic_mapping(qc: &QubitCircuit, m: usize, b: usize, d: usize) -> Result<QubitLayout, EmbedError> {
    let n = qc.num_qubits;
    if n > m * b {
        return Err(EmbedError::Capacity { n, m, b });
    }
    let mut w = vec![vec![0usize; n]; n];
    for g in &qc.gates {
        let qs = g.qubits();
        for &x in &qs {
            for &y in &qs {
                if x != y {
                    w[x][y] += 1;
                }
            }
        }
    }
    let mut free: Vec<usize> = (0..n).collect();
    let mut assignment = vec![(0, 0); n];
    for qudit in 0..m {
        if free.is_empty() {
            break;
        }
        let mut group = vec![free.remove(0)];
        while group.len() < b && !free.is_empty() {
            let (pos, _) = free
                .iter()
                .enumerate()
                .max_by_key(|(_, &q)| (group.iter().map(|&g| w[g][q]).sum::<usize>(), std::cmp::Reverse(q)))
                .unwrap();
            group.push(free.remove(pos));
        }
        group.sort_unstable();
        for (s, &q) in group.iter().enumerate() {
            assignment[q] = (qudit, s);
        }
    }
    QubitLayout::new(m, b, d, assignment)
}
