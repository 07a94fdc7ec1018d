use super::layout::QubitLayout;
use super::mask::{mask_controlled_phase, masks_for_qubits, BackendFamily, NativeBackend};
use super::paired::{embedded_cnz, PairedTopology};
use super::qubit::{QubitCircuit, QubitGate, SingleQubitGate};
use crate::circuit_ir::std_gates::{h, phase, rx, ry, x};
use crate::circuit_ir::{cost_report, Gate, MixedRadixCircuit};
use crate::linalg::C64;
use crate::mrsim::{circuit_columns, SimError, StateVector, SubspaceEmbedding};
use nalgebra::DMatrix;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::fmt;
use std::str::FromStr;

/// The four one-bit functions queried by Deutsch's algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeutschOracle {
    /// `f(x) = 0`
    Constant0,
    /// `f(x) = 1`
    Constant1,
    /// `f(x) = x`
    Balanced0,
    /// `f(x) = ¬x`
    Balanced1,
}

impl DeutschOracle {
    pub const ALL: [DeutschOracle; 4] = [Self::Constant0, Self::Constant1, Self::Balanced0, Self::Balanced1];

    pub fn is_constant(self) -> bool {
        matches!(self, Self::Constant0 | Self::Constant1)
    }

    /// Oracle `|x, y⟩ ↦ |x, y ⊕ f(x)⟩` on one ququart (x in the first slot).
    pub fn gates(self, wire: usize) -> Vec<Gate> {
        // R_X(π) on both pairs is -i·X on the second qubit; as a single global
        // phase it is left in place.
        let flip = |i: usize, j: usize| vec![rx(wire, i, j, PI), phase(wire, i, FRAC_PI_2), phase(wire, j, FRAC_PI_2)];
        match self {
            Self::Constant0 => vec![],
            Self::Constant1 => vec![rx(wire, 0, 1, PI), rx(wire, 2, 3, PI)],
            Self::Balanced0 => flip(2, 3),
            Self::Balanced1 => flip(0, 1),
        }
    }

    /// The same oracle as a qubit circuit.
    pub fn qubit_gates(self) -> Vec<QubitGate> {
        let xq = |q| QubitGate::Single { qubit: q, gate: SingleQubitGate::X };
        match self {
            Self::Constant0 => vec![],
            Self::Constant1 => vec![xq(1)],
            Self::Balanced0 => vec![QubitGate::CX { control: 0, target: 1 }],
            Self::Balanced1 => vec![xq(0), QubitGate::CX { control: 0, target: 1 }, xq(0)],
        }
    }
}

impl fmt::Display for DeutschOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Constant0 => "constant0",
            Self::Constant1 => "constant1",
            Self::Balanced0 => "balanced0",
            Self::Balanced1 => "balanced1",
        })
    }
}

impl FromStr for DeutschOracle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|o| o.to_string() == s)
            .ok_or_else(|| format!("unknown oracle `{s}` (expected constant0, constant1, balanced0 or balanced1)"))
    }
}

/// Rotations taking `|0⟩` of a ququart to `(|0⟩ - |1⟩ + |2⟩ - |3⟩)/2`.
pub fn deutsch_preparation(wire: usize) -> Vec<Gate> {
    let theta2 = 2.0 * (1.0 / 3f64.sqrt()).asin();
    vec![ry(wire, 0, 3, -FRAC_PI_3), ry(wire, 0, 2, theta2), ry(wire, 0, 1, -FRAC_PI_2)]
}

/// Deutsch's algorithm on a single ququart holding both qubits.
pub fn deutsch_circuit(oracle: DeutschOracle) -> MixedRadixCircuit {
    let mut c = MixedRadixCircuit::new(&[4]);
    c.extend(deutsch_preparation(0));
    c.extend(oracle.gates(0));
    c.extend(h(0, 0, 2));
    c.extend(h(0, 1, 3));
    c
}

/// The same algorithm as a two-qubit circuit.
pub fn deutsch_qubit_circuit(oracle: DeutschOracle) -> QubitCircuit {
    let mut qc = QubitCircuit::new(2);
    qc.single(1, SingleQubitGate::X).single(0, SingleQubitGate::H).single(1, SingleQubitGate::H);
    qc.gates.extend(oracle.qubit_gates());
    qc.single(0, SingleQubitGate::H);
    qc
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeutschOutcome {
    pub oracle: DeutschOracle,
    pub level_probabilities: Vec<f64>,
    /// Probability that the first qubit reads 0 (levels 0 and 1).
    pub p_constant: f64,
    pub verdict_constant: bool,
}

pub fn run_deutsch(circuit: &MixedRadixCircuit, oracle: DeutschOracle) -> Result<DeutschOutcome, SimError> {
    let mut s = StateVector::basis(&circuit.dims(), 0)?;
    s.apply_circuit(circuit)?;
    let p = s.level_populations(0);
    let p_constant = p[0] + p[1];
    Ok(DeutschOutcome { oracle, level_probabilities: p, p_constant, verdict_constant: p_constant > 0.5 })
}

/// Controlled `+1 mod 3` on `target` when `control` holds level `level`.
fn inc(control: usize, level: usize, target: usize) -> [Gate; 2] {
    [
        Gate::CXGen { wire_c: control, i: level, wire_t: target, j: 1, k: 2 },
        Gate::CXGen { wire_c: control, i: level, wire_t: target, j: 0, k: 1 },
    ]
}

/// Packs qubits `|a, b, c⟩` (on wires of dims 3, 3, 2) into the two qutrits,
/// returning the third wire to `|0⟩`.
pub fn compress_3q_to_2qutrits() -> MixedRadixCircuit {
    let (a, b, c) = (0, 1, 2);
    let mut circ = MixedRadixCircuit::new(&[3, 3, 2]);
    circ.extend(x(b, 0, 2));
    circ.extend(inc(a, 1, b));
    circ.extend(inc(b, 1, a));
    circ.extend(inc(c, 1, b));
    circ.push(Gate::CXGen { wire_c: b, i: 0, wire_t: c, j: 0, k: 1 });
    circ.extend(inc(c, 1, a));
    circ.push(Gate::CXGen { wire_c: a, i: 2, wire_t: c, j: 0, k: 1 });
    circ
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompressionRow {
    pub input: [usize; 3],
    pub output: [usize; 3],
    pub probability: f64,
}

/// Output basis state of each computational input, and the 9·2 × 8 isometry.
pub fn compression_truth_table(circuit: &MixedRadixCircuit) -> Result<(Vec<CompressionRow>, DMatrix<C64>), SimError> {
    let emb = SubspaceEmbedding::one_per_wire(&circuit.dims());
    let cols = circuit_columns(circuit, &emb.embedded_indices())?;
    let dim = circuit.dim_product();
    let iso = DMatrix::from_fn(dim, 8, |r, col| cols[col].amplitudes()[r]);
    let rows = cols
        .iter()
        .enumerate()
        .map(|(x, s)| {
            let (best, p) = s
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(i, a)| (i, a.norm_sqr()))
                .fold((0, 0.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            let l = crate::mrsim::decode(&circuit.dims(), best);
            CompressionRow { input: [x >> 2, (x >> 1) & 1, x & 1], output: [l[0], l[1], l[2]], probability: p }
        })
        .collect();
    Ok((rows, iso))
}

/// One line of the multicontrolled-phase scaling table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub scenario: &'static str,
    pub b: usize,
    /// Qubits taking part in the gate.
    pub qubits: usize,
    /// Qudits they occupy.
    pub qudits: usize,
    pub entangling: usize,
}

/// Qudit-side entangling counts for `C^{N-1}Z` placed three ways: packed into
/// two qudits, filling `K` whole qudits, and one qubit on each of `N` qudits.
pub fn scaling_table(b_values: &[usize], max_qudits: usize) -> Vec<ScalingRow> {
    let backend = |layout: &QubitLayout| NativeBackend::for_layout(BackendFamily::Cph, layout);
    let mut rows = Vec::new();
    for &b in b_values {
        let d = (1 << b) + 1;
        let two = QubitLayout::sequential(2 * b, 2, b, d).unwrap();
        for n in 2..=2 * b {
            // Spread as evenly as the slots allow across the two qudits.
            let qubits: Vec<usize> = (0..n).map(|k| if k % 2 == 0 { k / 2 } else { b + k / 2 }).collect();
            let c = mask_controlled_phase(&masks_for_qubits(&qubits, &two), &two, backend(&two)).unwrap();
            rows.push(ScalingRow { scenario: "two_qudit_mask", b, qubits: n, qudits: 2, entangling: count(&c) });
        }
        for k in 3..=max_qudits {
            let layout = QubitLayout::sequential(k * b, k, b, d).unwrap();
            let all: Vec<usize> = (0..k * b).collect();
            let c = embedded_cnz(&all, &layout, backend(&layout), PairedTopology::Linear).unwrap();
            rows.push(ScalingRow { scenario: "grouped", b, qubits: k * b, qudits: k, entangling: count(&c) });
        }
        for k in 2..=max_qudits {
            let layout = QubitLayout::sequential(k * b, k, b, d).unwrap();
            let qubits: Vec<usize> = (0..k).map(|w| w * b).collect();
            let c = embedded_cnz(&qubits, &layout, backend(&layout), PairedTopology::Linear).unwrap();
            rows.push(ScalingRow { scenario: "scattered", b, qubits: k, qudits: k, entangling: count(&c) });
        }
    }
    rows
}

fn count(c: &MixedRadixCircuit) -> usize {
    cost_report(c).entangling_count
}

pub fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut s = String::from("scenario,b,qubits,qudits,entangling\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.scenario, r.b, r.qubits, r.qudits, r.entangling));
    }
    s
}
