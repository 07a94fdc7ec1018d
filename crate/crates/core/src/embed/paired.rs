use super::lift::lifted_gates;
use super::mask::{mask_phase_gates, masks_for_qubits, xx_pi, BackendFamily, NativeBackend};
use super::{EmbedError, QubitLayout};
use crate::circuit_ir::std_gates::{adjoint_seq, h};
use crate::circuit_ir::{Gate, MixedRadixCircuit, SpanTree};
use crate::linalg::{hadamard, pauli_x, pauli_z, phase_gate, ry, rz, sqrt_unitary2, Mat2};
use crate::decomp::{zyz_decompose, Zyz};
use serde::{Deserialize, Serialize};

/// Shape of the ladder used when whole qudits act as controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairedTopology {
    #[default]
    Linear,
    /// Heap-ordered binary tree over the involved qudits.
    Tree,
}

/// Ladder over fully occupied qudits. Level `2^b - 1` (all slots 1) plays the
/// role of `|1⟩` in the one-qubit-per-qudit schemes; levels above it are the
/// flags climbed by the controlled inversions.
fn paired_gates(
    wires: &[usize],
    layout: &QubitLayout,
    backend: NativeBackend,
    topology: PairedTopology,
) -> Result<Vec<Gate>, EmbedError> {
    let k = wires.len();
    let one = (1usize << layout.b) - 1;
    let (tree, last) = match topology {
        PairedTopology::Linear => {
            let mut pairs: Vec<(usize, usize)> = (0..k - 2).map(|p| (p, p + 1)).collect();
            pairs.push((k - 1, k - 2));
            (SpanTree::from_parents(k - 2, pairs), k - 1)
        }
        PairedTopology::Tree => {
            let t = SpanTree::from_parents(0, (1..k).map(|p| (p, (p - 1) / 2)));
            (t, if k > 2 { 2 } else { 1 })
        }
    };
    let tree = tree.expect("ladder shapes are trees");
    let root = tree.root();

    let mut inner: Vec<usize> = (0..k).filter(|&s| s != root && tree.child_count(s) > 0).collect();
    inner.sort_by_key(|&s| (tree.subtree_height(s), s));
    let others: Vec<usize> = tree.children(root).iter().copied().filter(|&c| c != last).collect();
    let flag = |s: usize| one + if s == root { others.len() } else { tree.child_count(s) };

    let top = (0..k).map(flag).max().unwrap();
    let anc = layout.d - 1;
    let needed = match backend.family {
        BackendFamily::Cph => top + 1,
        BackendFamily::Xx => top + 2,
    };
    if layout.d < needed {
        return Err(EmbedError::InsufficientDimension {
            needed: format!("d >= {needed} for the {topology:?} ladder with the {} backend", backend.family),
        });
    }

    let mut forward = Vec::new();
    let mut ladder = |s: usize, children: &[usize]| {
        for (t, &c) in children.iter().enumerate() {
            forward.push(Gate::CXGen { wire_c: wires[c], i: flag(c), wire_t: wires[s], j: one + t, k: one + t + 1 });
        }
    };
    for &s in &inner {
        ladder(s, tree.children(s));
    }
    ladder(root, &others);
    let central = Gate::CPh { wire_c: wires[root], wire_t: wires[last], i: flag(root), j: flag(last) };

    let mut gates = forward.clone();
    gates.push(central);
    gates.extend(adjoint_seq(&forward));
    Ok(match backend.family {
        BackendFamily::Cph => gates,
        // An unpopulated level `a` on both sides turns XX^{xa|ya}(π) into CPh^{x|y}.
        BackendFamily::Xx => gates
            .into_iter()
            .flat_map(|g| match g {
                Gate::CPh { wire_c, wire_t, i, j } => vec![xx_pi(wire_c, (i, anc), wire_t, (j, anc))],
                Gate::CXGen { wire_c, i, wire_t, j, k } => {
                    let mut v = h(wire_t, j, k);
                    v.push(xx_pi(wire_c, (i, anc), wire_t, (k, anc)));
                    v.extend(h(wire_t, j, k));
                    v
                }
                other => vec![other],
            })
            .collect(),
    })
}

/// Qubit-level operations produced while lowering multicontrolled gates.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum QubitOp {
    Single(usize, Mat2),
    MultiZ(Vec<usize>),
}

fn close(a: &Mat2, b: &Mat2) -> bool {
    (a - b).iter().all(|z| z.norm() < 1e-12)
}

/// `U` on `target` controlled by `controls`, with `Z` and `X` kept as
/// multicontrolled phases.
pub(crate) fn controlled_ops(controls: &[usize], target: usize, u: &Mat2) -> Vec<QubitOp> {
    let all = || controls.iter().copied().chain([target]).collect::<Vec<_>>();
    if controls.is_empty() {
        vec![QubitOp::Single(target, *u)]
    } else if close(u, &pauli_z()) {
        vec![QubitOp::MultiZ(all())]
    } else if close(u, &pauli_x()) {
        vec![QubitOp::Single(target, hadamard()), QubitOp::MultiZ(all()), QubitOp::Single(target, hadamard())]
    } else {
        split_controls(controls, target, u)
    }
}

/// Removes one control: with `V² = U`,
/// `C^kU = C^{k-1}V(rest) · C^{k-1}X(rest → c) · CV†(c) · C^{k-1}X(rest → c) · CV(c)`.
fn split_controls(controls: &[usize], target: usize, u: &Mat2) -> Vec<QubitOp> {
    let (&c, rest) = controls.split_last().expect("at least one control");
    if rest.is_empty() {
        // U = e^{iφ} A X B X C with ABC = 1.
        let Zyz { phi, alpha, theta, beta } = zyz_decompose(u);
        let cx = || controlled_ops(&[c], target, &pauli_x());
        let mut ops = vec![QubitOp::Single(target, rz((beta - alpha) / 2.0))];
        ops.extend(cx());
        ops.push(QubitOp::Single(target, ry(-theta / 2.0) * rz(-(alpha + beta) / 2.0)));
        ops.extend(cx());
        ops.push(QubitOp::Single(target, rz(alpha) * ry(theta / 2.0)));
        ops.push(QubitOp::Single(c, phase_gate(phi)));
        return ops;
    }
    let v = sqrt_unitary2(u);
    let mut ops = controlled_ops(&[c], target, &v);
    ops.extend(controlled_ops(rest, c, &pauli_x()));
    ops.extend(controlled_ops(&[c], target, &v.adjoint()));
    ops.extend(controlled_ops(rest, c, &pauli_x()));
    ops.extend(controlled_ops(rest, target, &v));
    ops
}

fn involved_wires(qubits: &[usize], layout: &QubitLayout) -> Vec<usize> {
    let mut w: Vec<usize> = qubits.iter().map(|&q| layout.assignment[q].0).collect();
    w.sort_unstable();
    w.dedup();
    w
}

fn covers_whole_qudits(qubits: &[usize], wires: &[usize], layout: &QubitLayout) -> bool {
    qubits.len() == wires.len() * layout.b
}

fn check_qubits(qubits: &[usize], layout: &QubitLayout) -> Result<(), EmbedError> {
    if qubits.is_empty() {
        return Err(EmbedError::InvalidMask("no qubits given".into()));
    }
    for (k, &q) in qubits.iter().enumerate() {
        if q >= layout.num_qubits() {
            return Err(EmbedError::InvalidMask(format!("qubit {q} is not in the layout")));
        }
        if qubits[..k].contains(&q) {
            return Err(EmbedError::InvalidMask(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

/// Lowers `-1` on "all listed qubits are 1".
pub(crate) fn multi_z_gates(
    qubits: &[usize],
    layout: &QubitLayout,
    backend: NativeBackend,
    topology: PairedTopology,
) -> Result<Vec<Gate>, EmbedError> {
    let wires = involved_wires(qubits, layout);
    if wires.len() <= 2 {
        return mask_phase_gates(&masks_for_qubits(qubits, layout), layout, backend);
    }
    if covers_whole_qudits(qubits, &wires, layout) {
        match paired_gates(&wires, layout, backend, topology) {
            Err(EmbedError::InsufficientDimension { .. }) => {}
            other => return other,
        }
    }
    let (target, controls) = qubits.split_last().unwrap();
    ops_gates(&split_controls(controls, *target, &pauli_z()), layout, backend, topology)
}

pub(crate) fn ops_gates(
    ops: &[QubitOp],
    layout: &QubitLayout,
    backend: NativeBackend,
    topology: PairedTopology,
) -> Result<Vec<Gate>, EmbedError> {
    let mut out = Vec::new();
    for op in ops {
        match op {
            QubitOp::Single(q, u) => {
                let (w, s) = layout.assignment[*q];
                out.extend(lifted_gates(w, u, s, layout.b));
            }
            QubitOp::MultiZ(qs) => out.extend(multi_z_gates(qs, layout, backend, topology)?),
        }
    }
    Ok(out)
}

/// `C^{k-1}Z` on the listed qubits.
///
/// Qubits filling three or more qudits completely use a single ladder over
/// those qudits with `2K - 3` entangling gates. Gates touching at most two
/// qudits are mask phases. Anything else is split recursively into smaller
/// multicontrolled gates.
pub fn embedded_cnz(
    qubits: &[usize],
    layout: &QubitLayout,
    backend: NativeBackend,
    topology: PairedTopology,
) -> Result<MixedRadixCircuit, EmbedError> {
    check_qubits(qubits, layout)?;
    let wires = involved_wires(qubits, layout);
    let gates = if wires.len() >= 3 && covers_whole_qudits(qubits, &wires, layout) {
        paired_gates(&wires, layout, backend, topology)?
    } else {
        multi_z_gates(qubits, layout, backend, topology)?
    };
    let mut c = MixedRadixCircuit::new(&layout.dims());
    c.extend(gates);
    Ok(c)
}
