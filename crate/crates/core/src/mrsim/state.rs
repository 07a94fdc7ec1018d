use crate::circuit_ir::{Gate, MixedRadixCircuit};
use crate::linalg::{C64, ONE, ZERO};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("target is not unitary (deviation {0:.3e})")]
    NonUnitaryTarget(f64),
    #[error("target has shape {got}x{got}, expected {want}x{want}")]
    TargetShape { got: usize, want: usize },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
}

/// Dense amplitudes over a mixed-radix space, wire 0 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

pub fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for w in (0..dims.len().saturating_sub(1)).rev() {
        s[w] = s[w + 1] * dims[w + 1];
    }
    s
}

pub fn encode(dims: &[usize], levels: &[usize]) -> usize {
    levels.iter().zip(dims).fold(0, |acc, (&l, &d)| acc * d + l)
}

pub fn decode(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for w in (0..dims.len()).rev() {
        out[w] = index % dims[w];
        index /= dims[w];
    }
    out
}

impl StateVector {
    pub fn basis(dims: &[usize], index: usize) -> Result<Self, SimError> {
        let dim: usize = dims.iter().product();
        if index >= dim {
            return Err(SimError::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { dims: dims.to_vec(), amps })
    }

    pub fn from_levels(dims: &[usize], levels: &[usize]) -> Result<Self, SimError> {
        if levels.len() != dims.len() || levels.iter().zip(dims).any(|(l, d)| l >= d) {
            return Err(SimError::DimensionMismatch(format!("levels {levels:?} do not fit dims {dims:?}")));
        }
        Self::basis(dims, encode(dims, levels))
    }

    pub fn from_amplitudes(dims: &[usize], amps: Vec<C64>) -> Result<Self, SimError> {
        let dim: usize = dims.iter().product();
        if amps.len() != dim {
            return Err(SimError::DimensionMismatch(format!("{} amplitudes for dimension {dim}", amps.len())));
        }
        Ok(Self { dims: dims.to_vec(), amps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, levels: &[usize]) -> C64 {
        self.amps[encode(&self.dims, levels)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Population of each level of `wire`.
    pub fn level_populations(&self, wire: usize) -> Vec<f64> {
        let st = strides(&self.dims);
        let mut p = vec![0.0; self.dims[wire]];
        for (idx, a) in self.amps.iter().enumerate() {
            p[(idx / st[wire]) % self.dims[wire]] += a.norm_sqr();
        }
        p
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        check_gate(&self.dims, gate)?;
        apply_unchecked(&self.dims, &mut self.amps, gate);
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &MixedRadixCircuit) -> Result<(), SimError> {
        if circuit.dims() != self.dims {
            return Err(SimError::DimensionMismatch(format!(
                "circuit dims {:?} vs state dims {:?}",
                circuit.dims(),
                self.dims
            )));
        }
        for g in &circuit.gates {
            self.apply(g)?;
        }
        Ok(())
    }
}

fn check_gate(dims: &[usize], gate: &Gate) -> Result<(), SimError> {
    let wires = gate.wires();
    if wires.len() == 2 && wires[0] == wires[1] {
        return Err(SimError::DimensionMismatch(format!("{} acts twice on wire {}", gate.kind_name(), wires[0])));
    }
    for (w, levels) in wires.iter().zip(gate.levels_per_wire()) {
        let d = *dims
            .get(*w)
            .ok_or_else(|| SimError::DimensionMismatch(format!("wire {w} does not exist")))?;
        if let Some(l) = levels.iter().find(|&&l| l >= d) {
            return Err(SimError::DimensionMismatch(format!("level {l} on wire {w} of dimension {d}")));
        }
        if levels.len() == 2 && levels[0] == levels[1] {
            return Err(SimError::DimensionMismatch(format!("repeated level {} on wire {w}", levels[0])));
        }
    }
    Ok(())
}

fn apply_unchecked(dims: &[usize], amps: &mut [C64], gate: &Gate) {
    let st = strides(dims);
    let block = gate.local_block();
    let offsets: Vec<usize> = block
        .combos
        .iter()
        .map(|c| c[0] * st[block.wires[0]] + if block.arity == 2 { c[1] * st[block.wires[1]] } else { 0 })
        .collect();
    let touched: Vec<usize> = block.wires[..block.arity].to_vec();
    let n = offsets.len();
    let mut buf = vec![ZERO; n];
    for base in 0..amps.len() {
        if touched.iter().any(|&w| !(base / st[w]).is_multiple_of(dims[w])) {
            continue;
        }
        for (b, &o) in buf.iter_mut().zip(&offsets) {
            *b = amps[base + o];
        }
        for r in 0..n {
            let row = &block.matrix[r * n..(r + 1) * n];
            amps[base + offsets[r]] = row.iter().zip(&buf).map(|(m, x)| m * x).sum();
        }
    }
}

/// The gate applied to a copy of `state`.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector, SimError> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

/// The circuit applied to each basis input, in input order.
pub fn circuit_columns(circuit: &MixedRadixCircuit, inputs: &[usize]) -> Result<Vec<StateVector>, SimError> {
    let dims = circuit.dims();
    for g in &circuit.gates {
        check_gate(&dims, g)?;
    }
    inputs
        .par_iter()
        .map(|&idx| {
            let mut s = StateVector::basis(&dims, idx)?;
            for g in &circuit.gates {
                apply_unchecked(&dims, &mut s.amps, g);
            }
            Ok(s)
        })
        .collect()
}

/// Full unitary over the whole mixed-radix space.
pub fn circuit_unitary(circuit: &MixedRadixCircuit) -> Result<nalgebra::DMatrix<C64>, SimError> {
    let dim = circuit.dim_product();
    let cols = circuit_columns(circuit, &(0..dim).collect::<Vec<_>>())?;
    Ok(nalgebra::DMatrix::from_fn(dim, dim, |r, c| cols[c].amps[r]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn phase_flips_level_one() {
        let s = StateVector::basis(&[3], 1).unwrap();
        let out = apply_gate(&s, &Gate::Phase { wire: 0, i: 1, theta: PI }).unwrap();
        assert!((out.amplitudes()[1] + ONE).norm() < 1e-15);
    }

    #[test]
    fn y_rotation_by_pi_moves_population() {
        let s = StateVector::basis(&[3], 0).unwrap();
        let out = apply_gate(&s, &Gate::Rotation { wire: 0, i: 0, j: 1, phi: FRAC_PI_2, theta: PI }).unwrap();
        assert!((out.amplitudes()[1] - ONE).norm() < 1e-15);
    }

    #[test]
    fn xx_half_pi_on_zero_zero() {
        let s = StateVector::basis(&[3, 3], 0).unwrap();
        let g = Gate::XX { wire_a: 0, wire_b: 1, i: 0, j: 1, k: 0, l: 1, phi: 0.0, theta: 0.0, chi: FRAC_PI_2 };
        let out = apply_gate(&s, &g).unwrap();
        assert!((out.amplitude(&[1, 1]) + I).norm() < 1e-15);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_columns() {
        let c = MixedRadixCircuit::new(&[2, 3]);
        let cols = circuit_columns(&c, &[0, 5]).unwrap();
        assert_eq!(cols[0], StateVector::basis(&[2, 3], 0).unwrap());
        assert_eq!(cols[1], StateVector::basis(&[2, 3], 5).unwrap());
    }

    #[test]
    fn rejects_bad_level() {
        let s = StateVector::basis(&[2], 0).unwrap();
        assert!(matches!(
            apply_gate(&s, &Gate::Phase { wire: 0, i: 2, theta: 0.0 }),
            Err(SimError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn encode_decode_round_trip() {
        let dims = [2, 3, 4];
        for idx in 0..24 {
            assert_eq!(encode(&dims, &decode(&dims, idx)), idx);
        }
        assert_eq!(encode(&dims, &[1, 0, 0]), 12);
    }
}
