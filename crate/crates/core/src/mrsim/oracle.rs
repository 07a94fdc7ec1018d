use super::embedding::SubspaceEmbedding;
use super::state::{circuit_columns, SimError};
use crate::circuit_ir::MixedRadixCircuit;
use crate::linalg::{max_abs_diff, C64};
use nalgebra::DMatrix;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// `1 - |tr(T†A)| / 2^n` for the extracted block `A`.
    pub distance: f64,
    /// Largest out-of-subspace population over the embedded inputs.
    pub leakage: f64,
    /// Largest entrywise deviation from the phase-aligned target.
    pub max_deviation: f64,
}

/// The circuit's action restricted to the embedded subspace, plus per-column leakage.
pub fn subspace_block(
    circuit: &MixedRadixCircuit,
    emb: &SubspaceEmbedding,
) -> Result<(DMatrix<C64>, Vec<f64>), SimError> {
    if circuit.dims() != emb.dims() {
        return Err(SimError::DimensionMismatch(format!(
            "circuit dims {:?} vs embedding dims {:?}",
            circuit.dims(),
            emb.dims()
        )));
    }
    let idx = emb.embedded_indices();
    let cols = circuit_columns(circuit, &idx)?;
    let n = idx.len();
    let block = DMatrix::from_fn(n, n, |r, c| cols[c].amplitudes()[idx[r]]);
    let leak = (0..n)
        .map(|c| (1.0 - block.column(c).iter().map(|a| a.norm_sqr()).sum::<f64>()).max(0.0))
        .collect();
    Ok((block, leak))
}

/// Bytes held by the column sweep of the oracle.
pub fn oracle_workload_bytes(circuit: &MixedRadixCircuit, emb: &SubspaceEmbedding) -> u128 {
    (1u128 << emb.num_qubits()) * circuit.dim_product() as u128 * std::mem::size_of::<C64>() as u128
}

/// Compares a circuit with a qubit-space unitary on the embedded subspace,
/// up to one global phase.
pub fn equivalent_on_subspace(
    circuit: &MixedRadixCircuit,
    target: &DMatrix<C64>,
    emb: &SubspaceEmbedding,
    tol: f64,
) -> Result<EquivalenceVerdict, SimError> {
    let n = 1usize << emb.num_qubits();
    if target.nrows() != n || target.ncols() != n {
        return Err(SimError::TargetShape { got: target.nrows().max(target.ncols()), want: n });
    }
    let unit_dev = max_abs_diff(&(target.adjoint() * target), &DMatrix::identity(n, n));
    if unit_dev > tol.max(1e-12) {
        return Err(SimError::NonUnitaryTarget(unit_dev));
    }
    let (block, leak) = subspace_block(circuit, emb)?;
    let leakage = leak.into_iter().fold(0.0, f64::max);

    let mut phase = C64::new(1.0, 0.0);
    if let Some(c) = (0..n).find(|&c| block.column(c).norm() > tol) {
        let r = (0..n)
            .max_by(|&a, &b| target[(a, c)].norm().total_cmp(&target[(b, c)].norm()))
            .expect("non-empty");
        let ratio = block[(r, c)] / target[(r, c)];
        if ratio.norm() > 0.0 {
            phase = ratio / ratio.norm();
        }
    }
    let max_deviation = max_abs_diff(&block, &(target * phase));
    let overlap = (target.adjoint() * &block).trace().norm() / n as f64;
    let distance = (1.0 - overlap).max(0.0);
    Ok(EquivalenceVerdict {
        equivalent: max_deviation <= tol && leakage <= tol,
        distance,
        leakage,
        max_deviation,
    })
}
