use super::primitives::{xx_cx, xx_qubit_to_qutrit_inc};
use super::{DecompError, Native, Skeleton, TargetKind};
use crate::circuit_ir::std_gates::{h, rx, t, tdg};
use crate::circuit_ir::{Gate, MixedRadixCircuit, SpanTree};
use std::f64::consts::PI;

fn qubit_maps(n: usize) -> Vec<Vec<usize>> {
    vec![vec![0, 1]; n]
}

fn require(n: usize, min: usize) -> Result<(), DecompError> {
    if n < min {
        Err(DecompError::TooFewQubits { min, got: n })
    } else {
        Ok(())
    }
}

/// Chain of `N` particles.
pub(crate) fn linear(n: usize, native: Native) -> Result<Skeleton, DecompError> {
    require(n, 3)?;
    Ok(match native {
        // Qubit ends, qutrits inside; qutrit k climbs to |2⟩ iff every qubit up to k is 1.
        Native::CphCx | Native::Xx => {
            let mut dims = vec![3; n];
            dims[0] = 2;
            dims[n - 1] = 2;
            let mut forward = Vec::new();
            if native == Native::CphCx {
                forward.push(Gate::CXGen { wire_c: 0, i: 1, wire_t: 1, j: 1, k: 2 });
                forward.extend((2..n - 1).map(|k| Gate::CXGen { wire_c: k - 1, i: 2, wire_t: k, j: 1, k: 2 }));
            } else {
                forward.extend(xx_qubit_to_qutrit_inc(0, 1));
                for k in 2..n - 1 {
                    forward.extend(xx_cx(k - 1, (0, 1), k, (1, 2)));
                }
            }
            Skeleton { dims, level_maps: qubit_maps(n), forward, ctrl_wire: n - 2, ctrl_level: 2, target_wire: n - 1 }
        }
        // Qutrits first, two qubits last; the flag hops along as |0,1⟩ ↔ |2,0⟩.
        Native::Iswap => {
            let mut dims = vec![3; n];
            dims[n - 2] = 2;
            dims[n - 1] = 2;
            let forward = (0..n - 2)
                .map(|k| Gate::ISwap { wire_a: k, wire_b: k + 1, i: 0, j: 2, k: 1, l: 0, theta: 0.0 })
                .collect();
            Skeleton { dims, level_maps: qubit_maps(n), forward, ctrl_wire: n - 2, ctrl_level: 1, target_wire: n - 1 }
        }
    })
}

/// Star around wire 0 (CX ladder) or around an extra clean ancilla (iSWAP).
pub(crate) fn star(n: usize, native: Native) -> Result<Skeleton, DecompError> {
    require(n, 3)?;
    match native {
        Native::CphCx => {
            let mut dims = vec![2; n];
            dims[0] = n;
            let forward = (1..n - 1).map(|i| Gate::CXGen { wire_c: i, i: 1, wire_t: 0, j: i, k: i + 1 }).collect();
            Ok(Skeleton { dims, level_maps: qubit_maps(n), forward, ctrl_wire: 0, ctrl_level: n - 1, target_wire: n - 1 })
        }
        Native::Iswap => {
            let anc = n;
            let mut dims = vec![3; n + 1];
            dims[0] = 2;
            dims[n - 1] = 2;
            dims[anc] = 2;
            let mut forward = vec![Gate::ISwap { wire_a: 0, wire_b: anc, i: 1, j: 0, k: 0, l: 1, theta: 0.0 }];
            forward.extend((1..n - 1).map(|p| Gate::ISwap { wire_a: p, wire_b: anc, i: 0, j: 2, k: 1, l: 0, theta: 0.0 }));
            let mut level_maps = qubit_maps(n);
            level_maps.push(vec![0]);
            Ok(Skeleton { dims, level_maps, forward, ctrl_wire: anc, ctrl_level: 1, target_wire: n - 1 })
        }
        Native::Xx => Err(DecompError::InvalidScheme("star topology supports cph_cx and iswap natives".into())),
    }
}

/// Nodes whose children get folded, deepest subtrees first.
fn folding_order(tree: &SpanTree) -> Vec<usize> {
    let mut inner: Vec<usize> =
        tree.nodes().into_iter().filter(|&s| s != tree.root() && tree.child_count(s) > 0).collect();
    inner.sort_by_key(|&s| (tree.subtree_height(s), s));
    inner
}

pub(crate) fn tree(
    tree: &SpanTree,
    dims: Option<&[usize]>,
    native: Native,
    kind: &TargetKind,
) -> Result<Skeleton, DecompError> {
    require(tree.len(), 2)?;
    let nodes = tree.nodes();
    let wire = |node: usize| nodes.binary_search(&node).expect("tree node");

    // For X and U the target must be a leaf hanging from the root.
    let (tree, last) = match kind {
        TargetKind::CnZ => {
            let ch = tree.children(tree.root());
            let last = if native == Native::Iswap { ch[0] } else { *ch.last().unwrap() };
            (tree.clone(), last)
        }
        _ => {
            let target = *nodes.iter().rev().find(|&&s| tree.degree(s) == 1).expect("trees have leaves");
            let p = tree.parent(target).unwrap_or_else(|| tree.children(target)[0]);
            let re = tree.rerooted(p).map_err(|e| DecompError::DisconnectedTree(e.to_string()))?;
            (re, target)
        }
    };
    let root = tree.root();

    let required: Vec<usize> = nodes
        .iter()
        .map(|&s| match native {
            Native::CphCx => (tree.degree(s) + 1).max(2),
            _ if s == root || s == last => 2,
            _ => 3,
        })
        .collect();
    let dims = match dims {
        None => required.clone(),
        Some(d) => {
            if d.len() != nodes.len() {
                return Err(DecompError::InvalidScheme(format!("{} dims for {} tree nodes", d.len(), nodes.len())));
            }
            for (w, (&have, &need)) in d.iter().zip(&required).enumerate() {
                if have < need {
                    return Err(DecompError::DimensionTooSmall { wire: w, node: nodes[w], dim: have, required: need });
                }
            }
            d.to_vec()
        }
    };

    let mut forward = Vec::new();
    let ladder = |s: usize, children: &[usize], out: &mut Vec<Gate>| {
        for (t, &c) in children.iter().enumerate() {
            out.push(Gate::CXGen { wire_c: wire(c), i: 1, wire_t: wire(s), j: t + 1, k: t + 2 });
        }
    };
    let absorb = |s: usize, children: &[usize], out: &mut Vec<Gate>| {
        for &c in children {
            out.push(Gate::ISwap { wire_a: wire(s), wire_b: wire(c), i: 1, j: 0, k: 0, l: 2, theta: 0.0 });
        }
    };
    for s in folding_order(&tree) {
        let ch = tree.children(s);
        match native {
            Native::CphCx => {
                ladder(s, ch, &mut forward);
                forward.push(rx(wire(s), 1, ch.len() + 1, PI));
            }
            _ => absorb(s, ch, &mut forward),
        }
    }
    let others: Vec<usize> = tree.children(root).iter().copied().filter(|&c| c != last).collect();
    let ctrl_level = match native {
        Native::CphCx => {
            ladder(root, &others, &mut forward);
            others.len() + 1
        }
        _ => {
            absorb(root, &others, &mut forward);
            1
        }
    };
    Ok(Skeleton {
        dims,
        level_maps: qubit_maps(nodes.len()),
        forward,
        ctrl_wire: wire(root),
        ctrl_level,
        target_wire: wire(last),
    })
}

/// Ternary Toffoli `CCX^{i|j|kl}(a, b → t)`: swaps `t`'s levels `k, l` when
/// `a = i` and `b = j`. Six controlled inversions with T-type phases, up to
/// diagonal phases on inactive inputs.
pub fn ternary_ccx_gates(a: usize, i: usize, b: usize, j: usize, tw: usize, k: usize, l: usize) -> Vec<Gate> {
    let jp = if j == 0 { 1 } else { 0 };
    let cx = |c: usize, ci: usize, w: usize, x: usize, y: usize| Gate::CXGen { wire_c: c, i: ci, wire_t: w, j: x, k: y };
    let mut g = h(tw, k, l);
    g.extend([
        cx(b, j, tw, k, l),
        tdg(tw, l),
        cx(a, i, tw, k, l),
        t(tw, l),
        cx(b, j, tw, k, l),
        tdg(tw, l),
        cx(a, i, tw, k, l),
        t(b, j),
        t(tw, l),
    ]);
    g.extend(h(tw, k, l));
    g.extend([cx(a, i, b, jp, j), t(a, i), tdg(b, j), cx(a, i, b, jp, j)]);
    g
}

/// `CCX^{i|j|kl}` on three qutrits (controls on wires 0, 1; target on wire 2).
pub fn ternary_toffoli(i: usize, j: usize, k: usize, l: usize) -> MixedRadixCircuit {
    assert!(i < 3 && j < 3 && k < 3 && l < 3 && k != l);
    let mut c = MixedRadixCircuit::new(&[3, 3, 3]);
    c.extend(ternary_ccx_gates(0, i, 1, j, 2, k, l));
    c
}

/// In-order perfect binary tree over `lo..=hi`: (node, left, right) for inner nodes.
fn inorder_tree(lo: usize, hi: usize, out: &mut Vec<(usize, usize, usize, usize)>) -> usize {
    let mid = (lo + hi) / 2;
    if lo == hi {
        return 0;
    }
    let hl = inorder_tree(lo, mid - 1, out);
    let hr = inorder_tree(mid + 1, hi, out);
    let height = hl.max(hr) + 1;
    out.push((height, mid, (lo + mid - 1) / 2, (mid + 1 + hi) / 2));
    height
}

/// `N - 1` controls arranged as an in-order binary tree of ternary Toffolis,
/// target on the last wire.
pub(crate) fn ternary(n: usize) -> Result<Skeleton, DecompError> {
    if n < 4 || !n.is_power_of_two() {
        return Err(DecompError::NotPowerOfTwo(n));
    }
    let controls = n - 1;
    let mut inner = Vec::new();
    inorder_tree(0, controls - 1, &mut inner);
    inner.sort();
    let mut dims = vec![2; n];
    for &(_, x, _, _) in &inner {
        dims[x] = 3;
    }
    let flag = |w: usize| if dims[w] == 3 { 2 } else { 1 };
    let mut forward = Vec::new();
    for &(_, x, u, v) in &inner {
        forward.extend(ternary_ccx_gates(u, flag(u), v, flag(v), x, 1, 2));
    }
    let root = (controls - 1) / 2;
    Ok(Skeleton { dims, level_maps: qubit_maps(n), forward, ctrl_wire: root, ctrl_level: 2, target_wire: n - 1 })
}
