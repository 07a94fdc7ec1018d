use super::gate::Gate;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireSpec {
    pub dim: usize,
}

/// Ordered gate list over wires of heterogeneous dimension.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MixedRadixCircuit {
    pub wires: Vec<WireSpec>,
    pub gates: Vec<Gate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    WireDimension,
    UnknownWire,
    LevelOutOfRange,
    RepeatedLevel,
    SameWire,
    NonFiniteAngle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// `None` for wire-level problems.
    pub gate_index: Option<usize>,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate_index {
            Some(g) => write!(f, "gate {g}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl MixedRadixCircuit {
    pub fn new(dims: &[usize]) -> Self {
        Self {
            wires: dims.iter().map(|&dim| WireSpec { dim }).collect(),
            gates: Vec::new(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.wires.iter().map(|w| w.dim).collect()
    }

    pub fn num_wires(&self) -> usize {
        self.wires.len()
    }

    pub fn dim_product(&self) -> usize {
        self.wires.iter().map(|w| w.dim).product()
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    /// Reversed sequence of adjoint gates.
    pub fn adjoint(&self) -> Self {
        Self {
            wires: self.wires.clone(),
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }

    pub fn entangling_gates(&self) -> impl Iterator<Item = (usize, &Gate)> {
        self.gates.iter().enumerate().filter(|(_, g)| g.is_entangling())
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_circuit(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Every invariant violation, tagged with the gate index where applicable.
pub fn validate_circuit(circuit: &MixedRadixCircuit) -> Vec<Violation> {
    let mut out = Vec::new();
    for (w, spec) in circuit.wires.iter().enumerate() {
        if spec.dim < 2 {
            out.push(Violation {
                gate_index: None,
                kind: ViolationKind::WireDimension,
                message: format!("wire {w} has dimension {} (< 2)", spec.dim),
            });
        }
    }
    for (gi, gate) in circuit.gates.iter().enumerate() {
        let mut push = |kind, message: String| {
            out.push(Violation { gate_index: Some(gi), kind, message })
        };
        let wires = gate.wires();
        if wires.len() == 2 && wires[0] == wires[1] {
            push(ViolationKind::SameWire, format!("{}: wires must differ", gate.kind_name()));
        }
        for (w, levels) in wires.iter().zip(gate.levels_per_wire()) {
            let Some(spec) = circuit.wires.get(*w) else {
                push(ViolationKind::UnknownWire, format!("{}: unknown wire {w}", gate.kind_name()));
                continue;
            };
            for &lv in &levels {
                if lv >= spec.dim {
                    push(
                        ViolationKind::LevelOutOfRange,
                        format!("{}: level {lv} out of range on wire {w} (dim {})", gate.kind_name(), spec.dim),
                    );
                }
            }
            if levels.len() == 2 && levels[0] == levels[1] {
                push(
                    ViolationKind::RepeatedLevel,
                    format!("{}: repeated level {} on wire {w}", gate.kind_name(), levels[0]),
                );
            }
        }
        if gate.angles().iter().any(|a| !a.is_finite()) {
            push(ViolationKind::NonFiniteAngle, format!("{}: non-finite angle", gate.kind_name()));
        }
    }
    out
}
