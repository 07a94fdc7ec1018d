use crate::circuit_ir::std_gates::{phase, ry};
use crate::circuit_ir::Gate;
use crate::decomp::{zyz_decompose, Zyz};
use crate::linalg::{cis, Mat2, ONE};

const SKIP: f64 = 1e-14;

/// `u` acting on levels `(i, j)` of one qudit, `i` carrying slot value 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelOp {
    pub i: usize,
    pub j: usize,
    pub u: Mat2,
}

/// A single-qubit gate on `slot` becomes `u^{ij}` on each of the `2^{b-1}`
/// level pairs that differ only in that slot's bit.
pub fn lift_single_qubit_gate(u: &Mat2, slot: usize, b: usize) -> Vec<TwoLevelOp> {
    assert!(slot < b, "slot {slot} out of range for b = {b}");
    let bit = 1 << (b - 1 - slot);
    (0..1usize << b).filter(|x| x & bit == 0).map(|i| TwoLevelOp { i, j: i | bit, u: *u }).collect()
}

/// Native gates realizing a two-level operation exactly, dropping trivial factors.
pub fn two_level_gates(wire: usize, op: &TwoLevelOp) -> Vec<Gate> {
    let Zyz { phi, alpha, theta, beta } = zyz_decompose(&op.u);
    let mut out = Vec::new();
    let ph = |level: usize, angle: f64, out: &mut Vec<Gate>| {
        if (cis(angle) - ONE).norm() > SKIP {
            out.push(phase(wire, level, angle));
        }
    };
    ph(op.i, -beta / 2.0, &mut out);
    ph(op.j, beta / 2.0, &mut out);
    if theta.abs() > SKIP {
        out.push(ry(wire, op.i, op.j, theta));
    }
    ph(op.i, phi - alpha / 2.0, &mut out);
    ph(op.j, phi + alpha / 2.0, &mut out);
    out
}

/// Native gates for `u` on `slot` of the qudit on `wire`.
pub fn lifted_gates(wire: usize, u: &Mat2, slot: usize, b: usize) -> Vec<Gate> {
    lift_single_qubit_gate(u, slot, b).iter().flat_map(|op| two_level_gates(wire, op)).collect()
}
