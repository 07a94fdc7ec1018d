use super::{Gate, MixedRadixCircuit};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

const KAPPA_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub entangling_count: usize,
    /// Entangling cost with every `XX(κπ/4)` counted as κ; `None` when some
    /// XX angle is not a multiple of π/4.
    pub xx_pi4_equivalent: Option<usize>,
    pub single_qudit_count: usize,
    pub depth: usize,
}

/// `Some(κ)` when `|χ| = κπ/4` within tolerance.
pub fn xx_kappa(chi: f64) -> Option<usize> {
    let k = chi.abs() / FRAC_PI_4;
    let r = k.round();
    ((k - r).abs() <= KAPPA_TOL).then_some(r as usize)
}

pub fn cost_report(circuit: &MixedRadixCircuit) -> CostReport {
    let mut entangling = 0;
    let mut single = 0;
    let mut pi4 = Some(0usize);
    for g in &circuit.gates {
        if g.is_entangling() {
            entangling += 1;
            let w = match g {
                Gate::XX { chi, .. } => xx_kappa(*chi),
                _ => Some(1),
            };
            pi4 = pi4.zip(w).map(|(a, b)| a + b);
        } else {
            single += 1;
        }
    }
    CostReport {
        entangling_count: entangling,
        xx_pi4_equivalent: pi4,
        single_qudit_count: single,
        depth: depth(circuit),
    }
}

/// Per-gate moment indices of the greedy as-soon-as-possible schedule.
pub fn moments(circuit: &MixedRadixCircuit) -> Vec<usize> {
    let mut frontier = vec![0usize; circuit.num_wires()];
    circuit
        .gates
        .iter()
        .map(|g| {
            let wires = g.wires();
            let m = wires.iter().map(|&w| frontier[w]).max().unwrap_or(0);
            for &w in &wires {
                frontier[w] = m + 1;
            }
            m
        })
        .collect()
}

pub fn depth(circuit: &MixedRadixCircuit) -> usize {
    moments(circuit).into_iter().map(|m| m + 1).max().unwrap_or(0)
}

/// Depth of the schedule when only entangling gates occupy moments.
pub fn entangling_depth(circuit: &MixedRadixCircuit) -> usize {
    let sub = MixedRadixCircuit {
        wires: circuit.wires.clone(),
        gates: circuit.gates.iter().filter(|g| g.is_entangling()).cloned().collect(),
    };
    depth(&sub)
}
