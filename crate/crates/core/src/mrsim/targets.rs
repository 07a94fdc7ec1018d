//! Explicit qubit-space reference unitaries, qubit 0 most significant.

use crate::linalg::{Mat2, C64, ONE, ZERO};
use nalgebra::DMatrix;

pub fn identity(n: usize) -> DMatrix<C64> {
    DMatrix::identity(1 << n, 1 << n)
}

/// `-1` on basis states where every listed qubit is 1.
pub fn multi_z(n: usize, qubits: &[usize]) -> DMatrix<C64> {
    let mask: usize = qubits.iter().map(|&q| 1 << (n - 1 - q)).sum();
    DMatrix::from_fn(1 << n, 1 << n, |r, c| {
        if r != c {
            ZERO
        } else if r & mask == mask {
            -ONE
        } else {
            ONE
        }
    })
}

/// `C^{n-1}Z` on all `n` qubits.
pub fn cnz(n: usize) -> DMatrix<C64> {
    multi_z(n, &(0..n).collect::<Vec<_>>())
}

/// `U` on `target`, conditioned on every qubit in `controls` being 1.
pub fn controlled(n: usize, controls: &[usize], target: usize, u: &Mat2) -> DMatrix<C64> {
    let cmask: usize = controls.iter().map(|&q| 1 << (n - 1 - q)).sum();
    let tbit = 1 << (n - 1 - target);
    DMatrix::from_fn(1 << n, 1 << n, |r, c| {
        if c & cmask != cmask {
            return if r == c { ONE } else { ZERO };
        }
        if (r & !tbit) != (c & !tbit) {
            return ZERO;
        }
        u[(usize::from(r & tbit != 0), usize::from(c & tbit != 0))]
    })
}

/// `C^{n-1}U` with the last qubit as target.
pub fn controlled_u(n: usize, u: &Mat2) -> DMatrix<C64> {
    controlled(n, &(0..n - 1).collect::<Vec<_>>(), n - 1, u)
}

pub fn cnx(n: usize) -> DMatrix<C64> {
    controlled_u(n, &crate::linalg::pauli_x())
}

pub fn ccx() -> DMatrix<C64> {
    cnx(3)
}

/// A `k`-qubit operator acting on the listed qubits (first listed most significant).
pub fn on_qubits(n: usize, qubits: &[usize], op: &DMatrix<C64>) -> DMatrix<C64> {
    let k = qubits.len();
    assert_eq!(op.nrows(), 1 << k);
    let local = |x: usize| -> usize {
        qubits.iter().fold(0, |acc, &q| (acc << 1) | ((x >> (n - 1 - q)) & 1))
    };
    let mask: usize = qubits.iter().map(|&q| 1 << (n - 1 - q)).sum();
    DMatrix::from_fn(1 << n, 1 << n, |r, c| {
        if r & !mask != c & !mask {
            ZERO
        } else {
            op[(local(r), local(c))]
        }
    })
}
