//! Multicontrolled gates for layouts holding one qubit per qudit.
//!
//! Every scheme follows the same V shape: a computing half that concentrates
//! the all-ones condition on one level of one control wire, a central
//! controlled operation onto the target, and the mirrored uncomputing half.

mod primitives;
mod schemes;
mod zyz;

pub use primitives::{complement_pair, relative_phase_cxgen, xx_cx};
pub use schemes::{ternary_ccx_gates, ternary_toffoli};
pub use zyz::{zyz_decompose, Zyz};

use crate::circuit_ir::std_gates::{adjoint_seq, h, phase, ry};
use crate::circuit_ir::{Gate, MixedRadixCircuit, SpanTree};
use crate::linalg::{is_unitary2, pauli_x, Mat2, C64};
use crate::mrsim::{equivalent_on_subspace, targets, EquivalenceVerdict, SimError, SubspaceEmbedding};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Native {
    CphCx,
    Xx,
    Iswap,
}

impl fmt::Display for Native {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Native::CphCx => "cph_cx",
            Native::Xx => "xx",
            Native::Iswap => "iswap",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Topology {
    Linear,
    Star,
    /// Wire `w` carries the `w`-th node in increasing node order. `dims`
    /// overrides the minimal dimensions the scheme needs.
    Tree { tree: SpanTree, dims: Option<Vec<usize>> },
    TernaryLogDepth,
}

impl Topology {
    pub fn name(&self) -> &'static str {
        match self {
            Topology::Linear => "linear",
            Topology::Star => "star",
            Topology::Tree { .. } => "tree",
            Topology::TernaryLogDepth => "ternary",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    pub native: Native,
    pub topology: Topology,
    /// Realize the central CZ of iSWAP schemes as two iSWAPs instead of a native CPh.
    pub expand_iswap_cz: bool,
}

impl Scheme {
    pub fn new(native: Native, topology: Topology) -> Self {
        Self { native, topology, expand_iswap_cz: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TargetKind {
    CnX,
    CnZ,
    CnU(Mat2),
}

impl TargetKind {
    pub fn name(&self) -> &'static str {
        match self {
            TargetKind::CnX => "cnx",
            TargetKind::CnZ => "cnz",
            TargetKind::CnU(_) => "cnu",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompError {
    #[error("{0}")]
    InvalidScheme(String),
    #[error("need at least {min} qubits, got {got}")]
    TooFewQubits { min: usize, got: usize },
    #[error("wire {wire} (node {node}) has dimension {dim}, needs at least {required}")]
    DimensionTooSmall { wire: usize, node: usize, dim: usize, required: usize },
    #[error("tree does not span its nodes: {0}")]
    DisconnectedTree(String),
    #[error("ternary scheme needs a power of two >= 4, got {0}")]
    NotPowerOfTwo(usize),
    #[error("U is not unitary")]
    NonUnitary,
}

/// An emitted circuit together with what it is meant to implement.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub circuit: MixedRadixCircuit,
    pub embedding: SubspaceEmbedding,
    pub kind: TargetKind,
    /// Qubit index (in embedding order) of the target.
    pub target_qubit: usize,
    /// Gate-index range of the central block.
    pub central: Range<usize>,
}

impl Decomposition {
    pub fn num_qubits(&self) -> usize {
        self.embedding.num_qubits()
    }

    pub fn target_unitary(&self) -> DMatrix<C64> {
        let n = self.num_qubits();
        let controls: Vec<usize> = (0..n).filter(|&q| q != self.target_qubit).collect();
        match &self.kind {
            TargetKind::CnZ => targets::cnz(n),
            TargetKind::CnX => targets::controlled(n, &controls, self.target_qubit, &pauli_x()),
            TargetKind::CnU(u) => targets::controlled(n, &controls, self.target_qubit, u),
        }
    }

    pub fn verify(&self, tol: f64) -> Result<EquivalenceVerdict, SimError> {
        equivalent_on_subspace(&self.circuit, &self.target_unitary(), &self.embedding, tol)
    }

    /// The computing half that precedes the central block.
    pub fn folding(&self) -> MixedRadixCircuit {
        MixedRadixCircuit { wires: self.circuit.wires.clone(), gates: self.circuit.gates[..self.central.start].to_vec() }
    }
}

/// Computing half plus where it leaves the all-ones flag.
pub(crate) struct Skeleton {
    pub dims: Vec<usize>,
    pub level_maps: Vec<Vec<usize>>,
    pub forward: Vec<Gate>,
    pub ctrl_wire: usize,
    pub ctrl_level: usize,
    pub target_wire: usize,
}

/// Where the central block acts. `spare` is a never-populated control level
/// used when the iSWAP central CZ is expanded.
struct Central {
    native: Native,
    ctrl: usize,
    level: usize,
    target: usize,
    spare: Option<usize>,
}

impl Central {
    fn z(&self) -> Vec<Gate> {
        let Central { native, ctrl, level, target, spare } = *self;
        match (native, spare) {
            (Native::Xx, _) => xx_cx(target, (0, 1), ctrl, complement_pair(level)),
            (Native::Iswap, Some(s)) => {
                // iSWAP^{ls|10}(π/2) squared is -1 on |l,1⟩ and on the never-populated |s,0⟩.
                let g = Gate::ISwap { wire_a: ctrl, wire_b: target, i: level, j: s, k: 1, l: 0, theta: FRAC_PI_2 };
                vec![g.clone(), g]
            }
            _ => vec![Gate::CPh { wire_c: ctrl, wire_t: target, i: level, j: 1 }],
        }
    }

    fn x(&self) -> Vec<Gate> {
        let Central { native, ctrl, level, target, .. } = *self;
        match native {
            Native::CphCx => vec![Gate::CXGen { wire_c: ctrl, i: level, wire_t: target, j: 0, k: 1 }],
            Native::Xx => xx_cx(ctrl, complement_pair(level), target, (0, 1)),
            Native::Iswap => {
                let mut g = h(target, 0, 1);
                g.extend(self.z());
                g.extend(h(target, 0, 1));
                g
            }
        }
    }

    /// Controlled-`U` built from two controlled inversions; `R_Z(a)` is
    /// emitted as a level-1 phase since the accumulated global phases cancel.
    fn u(&self, u: &Mat2) -> Vec<Gate> {
        let Zyz { phi, alpha, theta, beta } = zyz_decompose(u);
        let t = self.target;
        let mut g = vec![phase(t, 1, (beta - alpha) / 2.0)];
        g.extend(self.x());
        g.push(phase(t, 1, -(alpha + beta) / 2.0));
        g.push(ry(t, 0, 1, -theta / 2.0));
        g.extend(self.x());
        g.push(ry(t, 0, 1, theta / 2.0));
        g.push(phase(t, 1, alpha));
        g.push(phase(self.ctrl, self.level, phi));
        g
    }
}

pub(crate) fn assemble(sk: Skeleton, kind: TargetKind, native: Native, expand: bool) -> Decomposition {
    let mut dims = sk.dims;
    let spare = (native == Native::Iswap && expand).then(|| {
        dims[sk.ctrl_wire] += 1;
        dims[sk.ctrl_wire] - 1
    });
    let c = Central { native, ctrl: sk.ctrl_wire, level: sk.ctrl_level, target: sk.target_wire, spare };
    let central = match &kind {
        TargetKind::CnZ => c.z(),
        TargetKind::CnX => c.x(),
        TargetKind::CnU(u) => c.u(u),
    };
    let mut circuit = MixedRadixCircuit::new(&dims);
    circuit.extend(sk.forward.iter().cloned());
    let start = circuit.gates.len();
    circuit.extend(central);
    let end = circuit.gates.len();
    circuit.extend(adjoint_seq(&sk.forward));
    let embedding = SubspaceEmbedding::new(&dims, sk.level_maps).expect("skeleton level maps fit their wires");
    let target_qubit = (0..sk.target_wire).map(|w| embedding.slots_per_wire(w)).sum();
    Decomposition { circuit, embedding, kind, target_qubit, central: start..end }
}

/// `C^{N-1}X`, `C^{N-1}Z` or `C^{N-1}U` on `n` qubits.
pub fn decompose(kind: &TargetKind, n: usize, scheme: &Scheme) -> Result<Decomposition, DecompError> {
    if let TargetKind::CnU(u) = kind {
        if !is_unitary2(u, 1e-12) {
            return Err(DecompError::NonUnitary);
        }
    }
    let sk = match (&scheme.topology, scheme.native) {
        (Topology::Linear, native) => schemes::linear(n, native)?,
        (Topology::Star, Native::Xx) => {
            return Err(DecompError::InvalidScheme("star topology supports cph_cx and iswap natives".into()))
        }
        (Topology::Star, native) => schemes::star(n, native)?,
        (Topology::Tree { .. }, Native::Xx) => {
            return Err(DecompError::InvalidScheme("tree topology supports cph_cx and iswap natives".into()))
        }
        (Topology::Tree { tree, dims }, native) => {
            if tree.len() != n {
                return Err(DecompError::InvalidScheme(format!("tree has {} nodes but N = {n}", tree.len())));
            }
            schemes::tree(tree, dims.as_deref(), native, kind)?
        }
        (Topology::TernaryLogDepth, Native::CphCx) => schemes::ternary(n)?,
        (Topology::TernaryLogDepth, _) => {
            return Err(DecompError::InvalidScheme("ternary topology requires the cph_cx native".into()))
        }
    };
    Ok(assemble(sk, kind.clone(), scheme.native, scheme.expand_iswap_cz))
}

pub fn cnz_linear(n: usize, native: Native) -> Result<Decomposition, DecompError> {
    decompose(&TargetKind::CnZ, n, &Scheme::new(native, Topology::Linear))
}

pub fn cnz_star(n: usize, native: Native) -> Result<Decomposition, DecompError> {
    decompose(&TargetKind::CnZ, n, &Scheme::new(native, Topology::Star))
}

pub fn cnz_tree(tree: &SpanTree, dims: Option<Vec<usize>>, native: Native) -> Result<Decomposition, DecompError> {
    decompose(&TargetKind::CnZ, tree.len(), &Scheme::new(native, Topology::Tree { tree: tree.clone(), dims }))
}

pub fn cnz_ternary_logdepth(n: usize) -> Result<Decomposition, DecompError> {
    decompose(&TargetKind::CnZ, n, &Scheme::new(Native::CphCx, Topology::TernaryLogDepth))
}

pub fn cnu(n: usize, u: &Mat2, scheme: &Scheme) -> Result<Decomposition, DecompError> {
    decompose(&TargetKind::CnU(*u), n, scheme)
}

/// Three-particle Toffoli with one qutrit: CCX for the CX and XX natives,
/// C²Z for iSWAP.
pub fn toffoli_qutrit(native: Native) -> Decomposition {
    let kind = if native == Native::Iswap { TargetKind::CnZ } else { TargetKind::CnX };
    decompose(&kind, 3, &Scheme::new(native, Topology::Linear)).expect("N = 3 linear is always valid")
}
