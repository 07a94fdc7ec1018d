#![allow(dead_code)]

use nalgebra::DMatrix;
use quditc_core::circuit_ir::{spanning_tree, CouplingMap, Gate, MixedRadixCircuit, SpanTree};
use quditc_core::decomp::Decomposition;
use quditc_core::linalg::C64;
use quditc_core::mrsim::StateVector;
use quditc_core::linalg::{c, Mat2};
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::TAU;

pub const TOL: f64 = 1e-9;

/// Haar-random 2×2 unitary via QR with phase-fixed diagonal.
pub fn haar2(rng: &mut impl Rng) -> Mat2 {
    let mut g = || c(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let m = Mat2::new(g(), g(), g(), g());
    let qr = m.qr();
    let (q, r) = (qr.q(), qr.r());
    let ph = Mat2::from_diagonal(&nalgebra::Vector2::new(r[(0, 0)] / r[(0, 0)].norm(), r[(1, 1)] / r[(1, 1)].norm()));
    q * ph
}

fn two_levels(rng: &mut impl Rng, d: usize) -> (usize, usize) {
    let i = rng.random_range(0..d);
    let mut j = rng.random_range(0..d - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Any native gate with random wires, levels and angles.
pub fn random_gate(rng: &mut impl Rng, dims: &[usize]) -> Gate {
    let n = dims.len();
    let wire = rng.random_range(0..n);
    let angle = |rng: &mut dyn rand::RngCore| rng.random_range(-TAU..TAU);
    let kind = if n < 2 { rng.random_range(0..2) } else { rng.random_range(0..6) };
    if kind < 2 {
        let (i, j) = two_levels(rng, dims[wire]);
        return if kind == 0 {
            Gate::Rotation { wire, i, j, phi: angle(rng), theta: angle(rng) }
        } else {
            Gate::Phase { wire, i, theta: angle(rng) }
        };
    }
    let mut other = rng.random_range(0..n - 1);
    if other >= wire {
        other += 1;
    }
    let (da, db) = (dims[wire], dims[other]);
    let (i, j) = two_levels(rng, da);
    let (k, l) = two_levels(rng, db);
    match kind {
        2 => Gate::CPh { wire_c: wire, wire_t: other, i, j: k },
        3 => Gate::CXGen { wire_c: wire, i, wire_t: other, j: k, k: l },
        4 => Gate::ISwap { wire_a: wire, wire_b: other, i, j, k, l, theta: angle(rng) },
        _ => Gate::XX { wire_a: wire, wire_b: other, i, j, k, l, phi: angle(rng), theta: angle(rng), chi: angle(rng) },
    }
}

pub fn random_dims(rng: &mut impl Rng, max_wires: usize, max_dim: usize) -> Vec<usize> {
    let n = rng.random_range(1..=max_wires);
    (0..n).map(|_| rng.random_range(2..=max_dim)).collect()
}

pub fn random_circuit(rng: &mut impl Rng, dims: &[usize], len: usize) -> MixedRadixCircuit {
    let mut c = MixedRadixCircuit::new(dims);
    for _ in 0..len {
        c.push(random_gate(rng, dims));
    }
    c
}

/// Random labelled tree re-rooted at its centre.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> SpanTree {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    let map = CouplingMap::new(n, edges).unwrap();
    spanning_tree(&map, &(0..n).collect::<Vec<_>>(), None).unwrap()
}

/// Entangling gates after the central block undo those before it, in reverse.
pub fn is_mirror(d: &Decomposition) -> bool {
    let before: Vec<&Gate> = d.circuit.gates[..d.central.start].iter().filter(|g| g.is_entangling()).collect();
    let after: Vec<&Gate> = d.circuit.gates[d.central.end..].iter().filter(|g| g.is_entangling()).collect();
    before.len() == after.len() && before.iter().rev().zip(&after).all(|(a, b)| a.adjoint() == **b)
}

/// After the computing half, each child of the root holds `|1⟩` exactly when
/// its whole subtree was 1.
pub fn flagged_children_hold_one(d: &Decomposition, tree: &SpanTree) -> bool {
    let fold = d.folding();
    let dims = fold.dims();
    let nodes = tree.nodes();
    let n = nodes.len();
    (0..1usize << n).all(|x| {
        let bits: Vec<usize> = (0..n).map(|q| (x >> (n - 1 - q)) & 1).collect();
        let mut s = StateVector::from_levels(&dims, &bits).unwrap();
        s.apply_circuit(&fold).unwrap();
        tree.children(tree.root()).iter().all(|&c| {
            let w = nodes.binary_search(&c).unwrap();
            let all_ones = tree.subtree(c).iter().all(|&m| bits[nodes.binary_search(&m).unwrap()] == 1);
            let p1 = s.level_populations(w)[1];
            if all_ones {
                (p1 - 1.0).abs() < 1e-9
            } else {
                p1 < 1e-9
            }
        })
    })
}


/// The two-qutrit relative-phase inversion as printed: identity on the first
/// five basis states, `-1` on `|1,2⟩`, `|2,0⟩ ↔ |2,1⟩`, `-i` on `|2,2⟩`, all times `i`.
pub fn printed_relative_phase_matrix() -> DMatrix<C64> {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let mut m = DMatrix::<C64>::zeros(9, 9);
    for x in [0, 1, 2, 3, 4] {
        m[(x, x)] = one;
    }
    m[(5, 5)] = -one;
    m[(6, 7)] = one;
    m[(7, 6)] = one;
    m[(8, 8)] = -i;
    m * i
}
