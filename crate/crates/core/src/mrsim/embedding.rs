use super::state::{encode, strides, SimError, StateVector};
use serde::{Deserialize, Serialize};

/// Placement of qubit basis states inside the levels of each wire.
///
/// `level_maps[w][x]` is the level that carries the local label `x`. A map of
/// length `2^b` holds `b` qubits (label bits most significant first); a map of
/// length 1 pins an ancilla wire to a fixed level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceEmbedding {
    dims: Vec<usize>,
    level_maps: Vec<Vec<usize>>,
}

impl SubspaceEmbedding {
    pub fn new(dims: &[usize], level_maps: Vec<Vec<usize>>) -> Result<Self, SimError> {
        if dims.len() != level_maps.len() {
            return Err(SimError::InvalidEmbedding(format!(
                "{} level maps for {} wires",
                level_maps.len(),
                dims.len()
            )));
        }
        for (w, (map, &d)) in level_maps.iter().zip(dims).enumerate() {
            if map.is_empty() || !map.len().is_power_of_two() {
                return Err(SimError::InvalidEmbedding(format!("wire {w}: map length {} is not 2^b", map.len())));
            }
            if let Some(l) = map.iter().find(|&&l| l >= d) {
                return Err(SimError::InvalidEmbedding(format!("wire {w}: level {l} exceeds dim {d}")));
            }
            let mut sorted = map.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != map.len() {
                return Err(SimError::InvalidEmbedding(format!("wire {w}: map {map:?} is not injective")));
            }
        }
        Ok(Self { dims: dims.to_vec(), level_maps })
    }

    /// One qubit per wire on levels 0 and 1.
    pub fn one_per_wire(dims: &[usize]) -> Self {
        Self::new(dims, vec![vec![0, 1]; dims.len()]).expect("every wire has at least two levels")
    }

    /// `b` qubits per wire, label `x` on level `x`.
    pub fn binary(dims: &[usize], b: usize) -> Result<Self, SimError> {
        Self::new(dims, vec![(0..1 << b).collect(); dims.len()])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn level_maps(&self) -> &[Vec<usize>] {
        &self.level_maps
    }

    pub fn slots_per_wire(&self, wire: usize) -> usize {
        self.level_maps[wire].len().trailing_zeros() as usize
    }

    pub fn num_qubits(&self) -> usize {
        (0..self.dims.len()).map(|w| self.slots_per_wire(w)).sum()
    }

    /// Mixed-radix index of the qubit basis state `x` (qubit 0 most significant).
    pub fn embed_index(&self, x: usize) -> usize {
        let mut rest = self.num_qubits();
        let levels: Vec<usize> = self
            .level_maps
            .iter()
            .enumerate()
            .map(|(w, map)| {
                let b = self.slots_per_wire(w);
                rest -= b;
                map[(x >> rest) & ((1 << b) - 1)]
            })
            .collect();
        encode(&self.dims, &levels)
    }

    pub fn embedded_indices(&self) -> Vec<usize> {
        (0..1usize << self.num_qubits()).map(|x| self.embed_index(x)).collect()
    }

    /// Population outside the embedded subspace.
    pub fn leakage(&self, state: &StateVector) -> f64 {
        let inside: f64 = self.embedded_indices().iter().map(|&i| state.amplitudes()[i].norm_sqr()).sum();
        (state.norm_sqr() - inside).max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitOutcome {
    pub p: [f64; 2],
    /// Population outside the embedded subspace.
    pub outside: f64,
}

/// Outcome distribution of the qubit stored in `slot` of `wire`.
pub fn measure_embedded_qubit(
    state: &StateVector,
    wire: usize,
    slot: usize,
    emb: &SubspaceEmbedding,
) -> Result<QubitOutcome, SimError> {
    if state.dims() != emb.dims() {
        return Err(SimError::DimensionMismatch("state and embedding dims differ".into()));
    }
    let b = emb.slots_per_wire(wire);
    if slot >= b {
        return Err(SimError::InvalidEmbedding(format!("slot {slot} on a wire holding {b} qubits")));
    }
    let dims = emb.dims();
    let st = strides(dims);
    // label_of[w][level] = Some(local label)
    let label_of: Vec<Vec<Option<usize>>> = emb
        .level_maps()
        .iter()
        .zip(dims)
        .map(|(map, &d)| {
            let mut v = vec![None; d];
            for (x, &l) in map.iter().enumerate() {
                v[l] = Some(x);
            }
            v
        })
        .collect();
    let mut p = [0.0; 2];
    let mut total = 0.0;
    for (idx, a) in state.amplitudes().iter().enumerate() {
        let pop = a.norm_sqr();
        total += pop;
        let labels: Option<Vec<usize>> = (0..dims.len()).map(|w| label_of[w][(idx / st[w]) % dims[w]]).collect();
        if let Some(labels) = labels {
            p[(labels[wire] >> (b - 1 - slot)) & 1] += pop;
        }
    }
    Ok(QubitOutcome { p, outside: (total - p[0] - p[1]).max(0.0) })
}
