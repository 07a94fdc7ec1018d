mod common;

use common::{haar2, TOL};
use nalgebra::DMatrix;
use proptest::prelude::*;
use quditc_core::circuit_ir::{cost_report, entangling_depth, Gate, MixedRadixCircuit};
use quditc_core::embed::*;
use quditc_core::linalg::{c, hadamard, max_abs_diff, Mat2, C64};
use quditc_core::mrsim::{equivalent_on_subspace, subspace_block, targets, StateVector, SubspaceEmbedding};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn cph(c: usize, t: usize, i: usize, j: usize) -> Gate {
    Gate::CPh { wire_c: c, wire_t: t, i, j }
}

fn cph_backend(layout: &QubitLayout) -> NativeBackend {
    NativeBackend::for_layout(BackendFamily::Cph, layout)
}

fn xx_backend(layout: &QubitLayout) -> NativeBackend {
    NativeBackend::for_layout(BackendFamily::Xx, layout)
}

fn assert_multi_z(circuit: &MixedRadixCircuit, layout: &QubitLayout, qubits: &[usize]) {
    let phys: Vec<usize> = qubits.iter().map(|&q| layout.physical(q)).collect();
    let target = targets::multi_z(layout.m * layout.b, &phys);
    let emb = SubspaceEmbedding::binary(&layout.dims(), layout.b).unwrap();
    let v = equivalent_on_subspace(circuit, &target, &emb, TOL).unwrap();
    assert!(v.equivalent, "{v:?}");
}

#[test]
fn lift_pairs_follow_the_slot_bit() {
    let u = hadamard();
    let pairs = |slot| lift_single_qubit_gate(&u, slot, 2).iter().map(|op| (op.i, op.j)).collect::<Vec<_>>();
    assert_eq!(pairs(0), vec![(0, 2), (1, 3)]);
    assert_eq!(pairs(1), vec![(0, 1), (2, 3)]);
    let quoct: Vec<_> = lift_single_qubit_gate(&u, 1, 3).iter().map(|op| (op.i, op.j)).collect();
    assert_eq!(quoct, vec![(0, 2), (1, 3), (4, 6), (5, 7)]);
}

#[test]
fn identity_lifts_to_identities() {
    let id = Mat2::identity();
    let ops = lift_single_qubit_gate(&id, 1, 3);
    assert_eq!(ops.len(), 4);
    assert!(ops.iter().all(|op| op.u == id));
    assert!(lifted_gates(0, &id, 1, 3).is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lift_is_a_homomorphism(seed in any::<u64>(), b in 2usize..4, slot_pick in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slot = slot_pick % b;
        let (u, v) = (haar2(&mut rng), haar2(&mut rng));
        let d = (1 << b) + 1;
        let mut sequential = MixedRadixCircuit::new(&[d]);
        sequential.extend(lifted_gates(0, &u, slot, b));
        sequential.extend(lifted_gates(0, &v, slot, b));
        let mut product = MixedRadixCircuit::new(&[d]);
        product.extend(lifted_gates(0, &(v * u), slot, b));
        let emb = SubspaceEmbedding::binary(&[d], b).unwrap();
        let (a, _) = subspace_block(&sequential, &emb).unwrap();
        let (p, _) = subspace_block(&product, &emb).unwrap();
        prop_assert!(max_abs_diff(&a, &p) < 1e-10);
        let mut single = MixedRadixCircuit::new(&[d]);
        single.extend(lifted_gates(0, &u, slot, b));
        let (lifted, _) = subspace_block(&single, &emb).unwrap();
        let target = targets::on_qubits(b, &[slot], &quditc_core::linalg::to_dmatrix(&u));
        prop_assert!(max_abs_diff(&lifted, &target) < 1e-10);
        // The ancillary level is untouched.
        let mut s = StateVector::basis(&[d], d - 1).unwrap();
        s.apply_circuit(&sequential).unwrap();
        prop_assert!((s.amplitudes()[d - 1] - c(1.0, 0.0)).norm() < 1e-12);
    }
}

/// Qubits A, B on the first ququart and C, D on the second.
fn ququart_pair(d: usize) -> QubitLayout {
    QubitLayout::sequential(4, 2, 2, d).unwrap()
}

#[test]
fn two_ququart_gate_table() {
    let cases: [(&str, Vec<usize>, usize, usize); 4] = [
        ("CZ same qudit", vec![0, 1], 0, 0),
        ("CZ distinct qudits", vec![0, 2], 4, 1),
        ("C2Z", vec![0, 1, 2], 2, 1),
        ("C3Z", vec![0, 1, 2, 3], 1, 1),
    ];
    for (name, qubits, n_cph, n_xx) in cases {
        let layout = ququart_pair(5);
        let masks = masks_for_qubits(&qubits, &layout);
        let cph = mask_controlled_phase(&masks, &layout, cph_backend(&layout)).unwrap();
        let xx = mask_controlled_phase(&masks, &layout, xx_backend(&layout)).unwrap();
        assert_eq!(cost_report(&cph).entangling_count, n_cph, "{name} cph");
        assert_eq!(cost_report(&xx).entangling_count, n_xx, "{name} xx");
        assert_eq!(cost_report(&xx).xx_pi4_equivalent, Some(4 * n_xx), "{name} xx pi/4");
        assert_multi_z(&cph, &layout, &qubits);
        assert_multi_z(&xx, &layout, &qubits);
    }
}

#[test]
fn two_ququart_gate_shapes() {
    let layout = ququart_pair(4);
    let b = cph_backend(&layout);
    let cz = mask_controlled_phase(&masks_for_qubits(&[0, 2], &layout), &layout, b).unwrap();
    assert_eq!(cz.gates, vec![cph(0, 1, 2, 2), cph(0, 1, 2, 3), cph(0, 1, 3, 2), cph(0, 1, 3, 3)]);
    let c2z = mask_controlled_phase(&masks_for_qubits(&[0, 1, 2], &layout), &layout, b).unwrap();
    assert_eq!(c2z.gates, vec![cph(0, 1, 3, 2), cph(0, 1, 3, 3)]);
    let same = mask_controlled_phase(&masks_for_qubits(&[0, 1], &layout), &layout, b).unwrap();
    assert_eq!(same.gates, vec![Gate::Phase { wire: 0, i: 3, theta: PI }]);

    let layout = ququart_pair(5);
    let xx = |qs: &[usize]| mask_controlled_phase(&masks_for_qubits(qs, &layout), &layout, xx_backend(&layout)).unwrap();
    let x = |i, j, k, l| Gate::XX { wire_a: 0, wire_b: 1, i, j, k, l, phi: 0.0, theta: 0.0, chi: PI };
    assert_eq!(xx(&[0, 2]).gates, vec![x(2, 3, 2, 3)]);
    assert_eq!(xx(&[0, 1, 2]).gates, vec![x(4, 3, 2, 3)]);
    assert_eq!(xx(&[0, 1, 2, 3]).gates, vec![x(4, 3, 4, 3)]);
}

#[test]
fn xx_pairing_needs_a_spare_level() {
    let layout = ququart_pair(4);
    let masks = masks_for_qubits(&[0, 1, 2], &layout);
    let err = mask_controlled_phase(&masks, &layout, xx_backend(&layout)).unwrap_err();
    assert!(matches!(err, EmbedError::InsufficientDimension { .. }));
    // Even level sets pair among themselves.
    assert!(mask_controlled_phase(&masks_for_qubits(&[0, 2], &layout), &layout, xx_backend(&layout)).is_ok());
}

#[test]
fn three_qudit_masks_are_rejected() {
    let layout = QubitLayout::sequential(6, 3, 2, 4).unwrap();
    let err = mask_controlled_phase(&masks_for_qubits(&[0, 2, 4], &layout), &layout, cph_backend(&layout)).unwrap_err();
    assert_eq!(err, EmbedError::UnsupportedArity(3));
}

#[test]
fn single_qudit_mask_phase_count() {
    // 2^{b-N} phases for N controlled slots.
    for b in 1..=3 {
        let layout = QubitLayout::sequential(b, 1, b, 1 << b).unwrap();
        for n in 1..=b {
            let qs: Vec<usize> = (0..n).collect();
            let c = mask_controlled_phase(&masks_for_qubits(&qs, &layout), &layout, cph_backend(&layout)).unwrap();
            assert_eq!(c.gates.len(), 1 << (b - n));
            assert_eq!(cost_report(&c).entangling_count, 0);
            if n >= 2 {
                assert_multi_z(&c, &layout, &qs);
            }
        }
    }
}

#[test]
fn quoct_gates() {
    let layout = QubitLayout::sequential(6, 2, 3, 8).unwrap();
    let b = cph_backend(&layout);
    let cz = mask_controlled_phase(&masks_for_qubits(&[0, 3], &layout), &layout, b).unwrap();
    assert_eq!(cost_report(&cz).entangling_count, 16);
    assert_multi_z(&cz, &layout, &[0, 3]);
    let all: Vec<usize> = (0..6).collect();
    let c5z = mask_controlled_phase(&masks_for_qubits(&all, &layout), &layout, b).unwrap();
    assert_eq!(c5z.gates, vec![cph(0, 1, 7, 7)]);
    assert_multi_z(&c5z, &layout, &all);

    // XX on two pairs of levels per side covers C³Z on four of the six qubits.
    let xx = mask_controlled_phase(&masks_for_qubits(&[0, 1, 3, 4], &layout), &layout, xx_backend(&layout)).unwrap();
    assert_eq!(cost_report(&xx).entangling_count, 1);
    assert_multi_z(&xx, &layout, &[0, 1, 3, 4]);
    let xx_cz = mask_controlled_phase(&masks_for_qubits(&[0, 3], &layout), &layout, xx_backend(&layout)).unwrap();
    assert_eq!(cost_report(&xx_cz).entangling_count, 4);
    assert_multi_z(&xx_cz, &layout, &[0, 3]);
}

#[test]
fn paired_linear_cph() {
    for k in [3usize, 4] {
        let layout = QubitLayout::sequential(2 * k, k, 2, 5).unwrap();
        let all: Vec<usize> = (0..2 * k).collect();
        let c = embedded_cnz(&all, &layout, cph_backend(&layout), PairedTopology::Linear).unwrap();
        assert_eq!(cost_report(&c).entangling_count, 2 * k - 3);
        assert_multi_z(&c, &layout, &all);
        assert!(c.is_valid());
    }
}

#[test]
fn paired_linear_levels() {
    let layout = QubitLayout::sequential(6, 3, 2, 5).unwrap();
    let all: Vec<usize> = (0..6).collect();
    let c = embedded_cnz(&all, &layout, cph_backend(&layout), PairedTopology::Linear).unwrap();
    let cx = Gate::CXGen { wire_c: 0, i: 3, wire_t: 1, j: 3, k: 4 };
    assert_eq!(c.gates, vec![cx.clone(), cph(1, 2, 4, 3), cx]);
}

#[test]
fn paired_tree_is_shallower() {
    let layout5 = QubitLayout::sequential(12, 6, 2, 5).unwrap();
    let layout6 = QubitLayout::sequential(12, 6, 2, 6).unwrap();
    let all: Vec<usize> = (0..12).collect();
    let lin = embedded_cnz(&all, &layout5, cph_backend(&layout5), PairedTopology::Linear).unwrap();
    let tree = embedded_cnz(&all, &layout6, cph_backend(&layout6), PairedTopology::Tree).unwrap();
    let (cl, ct) = (cost_report(&lin), cost_report(&tree));
    assert_eq!(cl.entangling_count, 9);
    assert_eq!(ct.entangling_count, 9);
    assert!(ct.depth < cl.depth, "tree {} vs linear {}", ct.depth, cl.depth);
    assert!(entangling_depth(&tree) < entangling_depth(&lin));
    // The tree needs two flag levels above |3⟩.
    let err = embedded_cnz(&all, &layout5, cph_backend(&layout5), PairedTopology::Tree).unwrap_err();
    assert!(matches!(err, EmbedError::InsufficientDimension { .. }));
}

#[test]
fn paired_tree_verified() {
    for k in [3usize, 4] {
        let layout = QubitLayout::sequential(2 * k, k, 2, 6).unwrap();
        let all: Vec<usize> = (0..2 * k).collect();
        let c = embedded_cnz(&all, &layout, cph_backend(&layout), PairedTopology::Tree).unwrap();
        assert_eq!(cost_report(&c).entangling_count, 2 * k - 3);
        assert_multi_z(&c, &layout, &all);
    }
}

#[test]
fn paired_xx_uses_one_more_level() {
    let all: Vec<usize> = (0..6).collect();
    let small = QubitLayout::sequential(6, 3, 2, 5).unwrap();
    let err = embedded_cnz(&all, &small, xx_backend(&small), PairedTopology::Linear).unwrap_err();
    assert!(matches!(err, EmbedError::InsufficientDimension { .. }));
    let layout = QubitLayout::sequential(6, 3, 2, 6).unwrap();
    let c = embedded_cnz(&all, &layout, xx_backend(&layout), PairedTopology::Linear).unwrap();
    assert_eq!(cost_report(&c).entangling_count, 3);
    assert_eq!(cost_report(&c).xx_pi4_equivalent, Some(12));
    assert_multi_z(&c, &layout, &all);
    let layout = QubitLayout::sequential(8, 4, 2, 7).unwrap();
    let all: Vec<usize> = (0..8).collect();
    let c = embedded_cnz(&all, &layout, xx_backend(&layout), PairedTopology::Tree).unwrap();
    assert_eq!(cost_report(&c).entangling_count, 5);
    assert_multi_z(&c, &layout, &all);
}

#[test]
fn paired_requires_enough_levels() {
    let layout = QubitLayout::sequential(6, 3, 2, 4).unwrap();
    let all: Vec<usize> = (0..6).collect();
    let err = embedded_cnz(&all, &layout, cph_backend(&layout), PairedTopology::Linear).unwrap_err();
    assert!(matches!(err, EmbedError::InsufficientDimension { .. }));
}

#[test]
fn scattered_controls_fall_back() {
    // One qubit from each of three ququarts, and a partial cover of three qudits.
    let layout = QubitLayout::sequential(6, 3, 2, 4).unwrap();
    for qubits in [vec![0, 2, 4], vec![0, 1, 2, 4], vec![1, 3, 4, 5]] {
        for backend in [cph_backend(&layout), xx_backend(&layout)] {
            let c = embedded_cnz(&qubits, &layout, backend, PairedTopology::Linear);
            let c = match c {
                Ok(c) => c,
                Err(EmbedError::InsufficientDimension { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            assert_multi_z(&c, &layout, &qubits);
        }
    }
    // Whole qudits without spare levels also fall back when reached through transpile.
    let mut qc = QubitCircuit::new(6);
    qc.push(QubitGate::CnZ { controls: (0..5).collect(), target: 5 });
    let (c, _) = transpile(&qc, &layout, cph_backend(&layout)).unwrap();
    assert!(verify_transpiled(&c, &qc, &layout, TOL).unwrap().equivalent);
}

fn deutsch_ok(outcome: &DeutschOutcome, oracle: DeutschOracle) {
    let p = &outcome.level_probabilities;
    if oracle.is_constant() {
        assert!((p[0] + p[1] - 1.0).abs() < TOL, "{oracle}: {p:?}");
    } else {
        assert!((p[2] + p[3] - 1.0).abs() < TOL, "{oracle}: {p:?}");
    }
    assert_eq!(outcome.verdict_constant, oracle.is_constant());
}

#[test]
fn deutsch_single_ququart() {
    let mut prep = MixedRadixCircuit::new(&[4]);
    prep.extend(deutsch_preparation(0));
    let mut s = StateVector::basis(&[4], 0).unwrap();
    s.apply_circuit(&prep).unwrap();
    let want = [0.5, -0.5, 0.5, -0.5];
    for (a, w) in s.amplitudes().iter().zip(want) {
        assert!((a - c(w, 0.0)).norm() < 1e-12, "{:?}", s.amplitudes());
    }
    for oracle in DeutschOracle::ALL {
        let c = deutsch_circuit(oracle);
        assert_eq!(cost_report(&c).entangling_count, 0);
        deutsch_ok(&run_deutsch(&c, oracle).unwrap(), oracle);
    }
}

#[test]
fn deutsch_transpiled() {
    let layout = QubitLayout::sequential(2, 1, 2, 4).unwrap();
    for oracle in DeutschOracle::ALL {
        let qc = deutsch_qubit_circuit(oracle);
        let (c, cost) = transpile(&qc, &layout, cph_backend(&layout)).unwrap();
        assert_eq!(c.num_wires(), 1);
        assert_eq!(cost.entangling_count, 0);
        assert!(verify_transpiled(&c, &qc, &layout, TOL).unwrap().equivalent);
        deutsch_ok(&run_deutsch(&c, oracle).unwrap(), oracle);
    }
}

/// H(q0), CX(q0 → q1), CCX(q0, q1 → q2), H(q3).
fn four_qubit_sample() -> QubitCircuit {
    let mut qc = QubitCircuit::new(4);
    qc.single(0, SingleQubitGate::H)
        .push(QubitGate::CX { control: 0, target: 1 })
        .push(QubitGate::CnX { controls: vec![0, 1], target: 2 })
        .single(3, SingleQubitGate::H);
    qc
}

#[test]
fn pairing_choice_changes_cost() {
    let qc = four_qubit_sample();
    let costs: Vec<usize> = canonical_layouts(2, 2, 4)
        .iter()
        .map(|l| {
            let (c, cost) = transpile(&qc, l, cph_backend(l)).unwrap();
            assert!(verify_transpiled(&c, &qc, l, TOL).unwrap().equivalent);
            cost.entangling_count
        })
        .collect();
    assert_eq!(costs, vec![2, 6, 6]);
    let (best, cost) = optimize_mapping(&qc, 2, 2, 4, BackendFamily::Cph, Objective::Entangling, DEFAULT_BUDGET).unwrap();
    assert_eq!(cost.entangling_count, 2);
    assert_eq!(best.assignment, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    let h = heuristic_mapping(&qc, 2, 2, 4).unwrap();
    assert_eq!(transpile(&qc, &h, cph_backend(&h)).unwrap().1.entangling_count, 2);
}

#[test]
fn optimize_colocates_a_cz() {
    let mut qc = QubitCircuit::new(4);
    qc.push(QubitGate::CZ { a: 0, b: 3 });
    let (best, cost) = optimize_mapping(&qc, 2, 2, 4, BackendFamily::Cph, Objective::Entangling, DEFAULT_BUDGET).unwrap();
    assert_eq!(cost.entangling_count, 0);
    assert_eq!(best.assignment[0].0, best.assignment[3].0);
}

#[test]
fn single_qubit_circuits_cost_nothing() {
    let mut qc = QubitCircuit::new(4);
    for q in 0..4 {
        qc.single(q, SingleQubitGate::H).single(q, SingleQubitGate::Rz(0.3));
    }
    let (_, cost) = optimize_mapping(&qc, 2, 2, 4, BackendFamily::Xx, Objective::Depth, DEFAULT_BUDGET).unwrap();
    assert_eq!(cost.entangling_count, 0);
}

#[test]
fn budget_and_capacity() {
    let qc = QubitCircuit::new(12);
    let err = optimize_mapping(&qc, 6, 2, 4, BackendFamily::Cph, Objective::Entangling, 100).unwrap_err();
    assert_eq!(err, EmbedError::BudgetExceeded { count: 10395, budget: 100 });
    let qc = QubitCircuit::new(4);
    let err = optimize_mapping(&qc, 1, 2, 4, BackendFamily::Cph, Objective::Entangling, DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err, EmbedError::Capacity { .. }));
    assert!(matches!(QubitLayout::sequential(4, 1, 2, 4), Err(EmbedError::Capacity { .. })));
}

#[test]
fn enumeration_count_agrees() {
    assert_eq!(count_mappings(4, 2, 2).unwrap(), 3);
    assert_eq!(canonical_layouts(2, 2, 4).len(), 3);
    assert_eq!(count_mappings(6, 2, 3).unwrap(), 15);
    for m in 1..6 {
        assert_eq!(count_mappings(m, 1, m).unwrap(), 1);
    }
}

#[test]
fn iswap_lowering() {
    let mut qc = QubitCircuit::new(4);
    qc.push(QubitGate::ISwap { a: 0, b: 1 }).push(QubitGate::ISwap { a: 1, b: 2 });
    for d in [4, 5] {
        let layout = ququart_pair(d);
        for backend in [cph_backend(&layout), xx_backend(&layout)] {
            let (c, cost) = transpile(&qc, &layout, backend).unwrap();
            assert!(verify_transpiled(&c, &qc, &layout, TOL).unwrap().equivalent);
            let per_cz = if backend.family == BackendFamily::Cph { 4 } else { 1 };
            assert_eq!(cost.entangling_count, 2 * per_cz);
        }
    }
}

#[test]
fn compression_truth_table_and_isometry() {
    let circuit = compress_3q_to_2qutrits();
    assert_eq!(circuit.dims(), vec![3, 3, 2]);
    let (rows, iso) = compression_truth_table(&circuit).unwrap();
    let expected = [[0, 2], [0, 0], [1, 1], [2, 2], [2, 0], [2, 1], [1, 2], [1, 0]];
    for (row, want) in rows.iter().zip(expected) {
        assert!((row.probability - 1.0).abs() < 1e-10, "{row:?}");
        assert_eq!([row.output[0], row.output[1]], want, "{row:?}");
        assert_eq!(row.output[2], 0);
    }
    let mut labels: Vec<_> = rows.iter().map(|r| (r.output[0], r.output[1])).collect();
    labels.sort();
    labels.dedup();
    assert_eq!(labels.len(), 8);
    let gram = iso.adjoint() * &iso;
    assert!(max_abs_diff(&gram, &DMatrix::<C64>::identity(8, 8)) < 1e-10);
}

#[test]
fn qubit_circuit_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut qc = four_qubit_sample();
    qc.push(QubitGate::CnU { controls: vec![3], target: 1, u: haar2(&mut rng) })
        .push(QubitGate::CnZ { controls: vec![0, 1], target: 3 })
        .push(QubitGate::ISwap { a: 2, b: 3 })
        .single(2, SingleQubitGate::Rx(0.25));
    let back = QubitCircuit::from_json(&qc.to_json()).unwrap();
    assert_eq!(back.to_json(), qc.to_json());
    assert!(max_abs_diff(&back.unitary(), &qc.unitary()) < 1e-15);
    let bad = r#"{"wires":[{"dim":2}],"gates":[{"kind":"SWAP","wires":[0]}]}"#;
    assert!(matches!(QubitCircuit::from_json(bad), Err(QubitCircuitError::UnsupportedGate { index: 0, .. })));
    let qutrit = r#"{"wires":[{"dim":3}],"gates":[]}"#;
    assert!(QubitCircuit::from_json(qutrit).is_err());
}

#[test]
fn scaling_rows() {
    let rows = scaling_table(&[2, 3], 5);
    for r in &rows {
        match r.scenario {
            "two_qudit_mask" => assert_eq!(r.entangling, 1 << (2 * r.b - r.qubits)),
            "grouped" => assert_eq!(r.entangling, 2 * r.qudits - 3),
            _ => assert!(r.entangling >= 1 << (2 * r.b - 2)),
        }
    }
    assert!(scaling_csv(&rows).starts_with("scenario,b,qubits,qudits,entangling\n"));
}

fn random_circuit(rng: &mut ChaCha8Rng, n: usize, len: usize) -> QubitCircuit {
    let mut qc = QubitCircuit::new(n);
    for _ in 0..len {
        let mut qs: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            qs.swap(i, rng.random_range(0..=i));
        }
        let g = match rng.random_range(0..7) {
            0 => QubitGate::Single { qubit: qs[0], gate: SingleQubitGate::U(haar2(rng)) },
            1 => QubitGate::CZ { a: qs[0], b: qs[1] },
            2 => QubitGate::CX { control: qs[0], target: qs[1] },
            3 => QubitGate::ISwap { a: qs[0], b: qs[1] },
            4 => QubitGate::CnZ { controls: qs[..2].to_vec(), target: qs[2] },
            5 => QubitGate::CnX { controls: qs[..2].to_vec(), target: qs[2] },
            _ => QubitGate::CnU { controls: qs[..1].to_vec(), target: qs[1], u: haar2(rng) },
        };
        qc.push(g);
    }
    qc
}

/// All position symmetries of two ququarts: slot swaps in each qudit and the qudit swap.
fn symmetries() -> Vec<impl Fn((usize, usize)) -> (usize, usize)> {
    let mut out = Vec::new();
    for mask in 0..8usize {
        out.push(move |(w, s): (usize, usize)| {
            let s = if mask >> w & 1 == 1 { 1 - s } else { s };
            let w = if mask & 4 != 0 { 1 - w } else { w };
            (w, s)
        });
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transpiled_circuits_verify(seed in any::<u64>(), xx in any::<bool>(), d in 4usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qc = random_circuit(&mut rng, 4, 6);
        let layouts = canonical_layouts(2, 2, d);
        let layout = &layouts[rng.random_range(0..layouts.len())];
        let family = if xx { BackendFamily::Xx } else { BackendFamily::Cph };
        match transpile(&qc, layout, NativeBackend::for_layout(family, layout)) {
            Ok((c, _)) => {
                prop_assert!(c.is_valid());
                let v = verify_transpiled(&c, &qc, layout, TOL).unwrap();
                prop_assert!(v.equivalent, "{v:?}");
            }
            Err(EmbedError::InsufficientDimension { .. }) => prop_assert!(xx && d == 4),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn layout_symmetry(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qc = random_circuit(&mut rng, 4, 5);
        for base in canonical_layouts(2, 2, 5) {
            let cost = |l: &QubitLayout| transpile(&qc, l, cph_backend(l)).unwrap().1.entangling_count;
            let reference = cost(&base);
            for sym in symmetries() {
                let moved = QubitLayout::new(2, 2, 5, base.assignment.iter().map(|&p| sym(p)).collect()).unwrap();
                prop_assert_eq!(cost(&moved), reference);
            }
        }
    }
}

#[test]
fn three_qudit_transpile_verifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let layout = QubitLayout::sequential(6, 3, 2, 5).unwrap();
    let mut qc = random_circuit(&mut rng, 6, 6);
    qc.push(QubitGate::CnZ { controls: (0..5).collect(), target: 5 });
    qc.push(QubitGate::CnX { controls: vec![0, 3], target: 5 });
    let (c, _) = transpile(&qc, &layout, cph_backend(&layout)).unwrap();
    assert!(verify_transpiled(&c, &qc, &layout, TOL).unwrap().equivalent);
}
