use super::layout::{slot_bit, QubitLayout};
use super::EmbedError;
use crate::circuit_ir::std_gates::phase;
use crate::circuit_ir::{Gate, MixedRadixCircuit};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlotCondition {
    One,
    Any,
}

/// Condition on the `b` slots of one qudit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ControlMask(pub Vec<SlotCondition>);

impl ControlMask {
    pub fn from_slots(b: usize, ones: &[usize]) -> Self {
        Self((0..b).map(|s| if ones.contains(&s) { SlotCondition::One } else { SlotCondition::Any }).collect())
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&c| c == SlotCondition::One).count()
    }

    /// Embedded levels whose label has a 1 in every `One` slot.
    pub fn matching_levels(&self) -> Vec<usize> {
        let b = self.0.len();
        (0..1usize << b)
            .filter(|&x| self.0.iter().enumerate().all(|(s, c)| *c == SlotCondition::Any || slot_bit(x, s, b) == 1))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendFamily {
    Cph,
    Xx,
}

impl fmt::Display for BackendFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendFamily::Cph => "cph",
            BackendFamily::Xx => "xx",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NativeBackend {
    pub family: BackendFamily,
    /// Whether level `2^b` exists and is never populated by the embedding.
    pub ancilla_level_available: bool,
}

impl NativeBackend {
    pub fn for_layout(family: BackendFamily, layout: &QubitLayout) -> Self {
        Self { family, ancilla_level_available: layout.ancilla_available() }
    }
}

/// `XX^{ij|kl}(π)`: `-1` on the four level combinations, identity elsewhere.
pub(crate) fn xx_pi(wa: usize, (i, j): (usize, usize), wb: usize, (k, l): (usize, usize)) -> Gate {
    Gate::XX { wire_a: wa, wire_b: wb, i, j, k, l, phi: 0.0, theta: 0.0, chi: PI }
}

/// Groups levels into pairs; an odd leftover is paired with the ancilla level
/// (listed first).
fn pair_up(levels: &[usize], anc: Option<usize>) -> Result<Vec<(usize, usize)>, EmbedError> {
    let mut pairs: Vec<(usize, usize)> = levels.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    if levels.len() % 2 == 1 {
        let single = *levels.last().unwrap();
        let a = anc.ok_or(EmbedError::InsufficientDimension {
            needed: "one unpopulated level for the XX pairing".into(),
        })?;
        pairs.push((a, single));
    }
    Ok(pairs)
}

/// Gates putting `-1` on every embedded state that satisfies all masks.
pub fn mask_phase_gates(
    masks: &[(usize, ControlMask)],
    layout: &QubitLayout,
    backend: NativeBackend,
) -> Result<Vec<Gate>, EmbedError> {
    let active: Vec<&(usize, ControlMask)> = masks.iter().filter(|(_, m)| m.ones() > 0).collect();
    for (w, m) in masks {
        if *w >= layout.m || m.0.len() != layout.b {
            return Err(EmbedError::InvalidMask(format!("mask on qudit {w} does not fit the layout")));
        }
    }
    for (k, (w, _)) in active.iter().enumerate() {
        if active[..k].iter().any(|(v, _)| v == w) {
            return Err(EmbedError::InvalidMask(format!("qudit {w} masked twice")));
        }
    }
    match active.as_slice() {
        [] => Err(EmbedError::InvalidMask("mask has no controlled slot".into())),
        [(w, m)] => Ok(m.matching_levels().into_iter().map(|x| phase(*w, x, PI)).collect()),
        [(wa, ma), (wb, mb)] => {
            let (la, lb) = (ma.matching_levels(), mb.matching_levels());
            match backend.family {
                BackendFamily::Cph => Ok(la
                    .iter()
                    .flat_map(|&i| lb.iter().map(move |&j| Gate::CPh { wire_c: *wa, wire_t: *wb, i, j }))
                    .collect()),
                BackendFamily::Xx => {
                    let anc = (backend.ancilla_level_available && layout.ancilla_available()).then_some(1 << layout.b);
                    let (pa, pb) = (pair_up(&la, anc)?, pair_up(&lb, anc)?);
                    Ok(pa.iter().flat_map(|&p| pb.iter().map(move |&q| xx_pi(*wa, p, *wb, q))).collect())
                }
            }
        }
        _ => Err(EmbedError::UnsupportedArity(active.len())),
    }
}

pub fn mask_controlled_phase(
    masks: &[(usize, ControlMask)],
    layout: &QubitLayout,
    backend: NativeBackend,
) -> Result<MixedRadixCircuit, EmbedError> {
    let mut c = MixedRadixCircuit::new(&layout.dims());
    c.extend(mask_phase_gates(masks, layout, backend)?);
    Ok(c)
}

/// Masks selecting the given logical qubits, one entry per involved qudit.
pub fn masks_for_qubits(qubits: &[usize], layout: &QubitLayout) -> Vec<(usize, ControlMask)> {
    let mut per: Vec<(usize, Vec<usize>)> = Vec::new();
    for &q in qubits {
        let (w, s) = layout.assignment[q];
        match per.iter_mut().find(|(v, _)| *v == w) {
            Some((_, slots)) => slots.push(s),
            None => per.push((w, vec![s])),
        }
    }
    per.sort();
    per.into_iter().map(|(w, slots)| (w, ControlMask::from_slots(layout.b, &slots))).collect()
}
