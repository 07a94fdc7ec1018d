use crate::circuit_ir::json::to_canonical_string;
use crate::linalg::{c, hadamard, pauli_x, pauli_y, pauli_z, phase_gate, ry, rz, Mat2, C64, I, ONE, ZERO};
use crate::mrsim::targets;
use nalgebra::DMatrix;
use serde_json::{json, Value};
use std::f64::consts::FRAC_PI_4;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum SingleQubitGate {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    P(f64),
    U(Mat2),
}

impl SingleQubitGate {
    pub fn matrix(&self) -> Mat2 {
        use SingleQubitGate::*;
        match self {
            H => hadamard(),
            X => pauli_x(),
            Y => pauli_y(),
            Z => pauli_z(),
            S => Mat2::new(ONE, ZERO, ZERO, I),
            Sdg => Mat2::new(ONE, ZERO, ZERO, -I),
            T => phase_gate(FRAC_PI_4),
            Tdg => phase_gate(-FRAC_PI_4),
            Rx(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                Mat2::new(c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0))
            }
            Ry(t) => ry(*t),
            Rz(t) => rz(*t),
            P(t) => phase_gate(*t),
            U(m) => *m,
        }
    }

    fn name(&self) -> &'static str {
        use SingleQubitGate::*;
        match self {
            H => "H",
            X => "X",
            Y => "Y",
            Z => "Z",
            S => "S",
            Sdg => "Sdg",
            T => "T",
            Tdg => "Tdg",
            Rx(_) => "RX",
            Ry(_) => "RY",
            Rz(_) => "RZ",
            P(_) => "P",
            U(_) => "U",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QubitGate {
    Single { qubit: usize, gate: SingleQubitGate },
    CZ { a: usize, b: usize },
    CX { control: usize, target: usize },
    ISwap { a: usize, b: usize },
    CnZ { controls: Vec<usize>, target: usize },
    CnX { controls: Vec<usize>, target: usize },
    CnU { controls: Vec<usize>, target: usize, u: Mat2 },
}

impl QubitGate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            QubitGate::Single { qubit, .. } => vec![*qubit],
            QubitGate::CZ { a, b } | QubitGate::ISwap { a, b } => vec![*a, *b],
            QubitGate::CX { control, target } => vec![*control, *target],
            QubitGate::CnZ { controls, target }
            | QubitGate::CnX { controls, target }
            | QubitGate::CnU { controls, target, .. } => controls.iter().copied().chain([*target]).collect(),
        }
    }

    /// The `kind` string used in the JSON form.
    pub fn kind_name(&self) -> &'static str {
        match self {
            QubitGate::Single { gate, .. } => gate.name(),
            QubitGate::CZ { .. } => "CZ",
            QubitGate::CX { .. } => "CX",
            QubitGate::ISwap { .. } => "ISWAP",
            QubitGate::CnZ { .. } => "CnZ",
            QubitGate::CnX { .. } => "CnX",
            QubitGate::CnU { .. } => "CnU",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitCircuit {
    pub num_qubits: usize,
    pub gates: Vec<QubitGate>,
}

#[derive(Debug, Error)]
pub enum QubitCircuitError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("gate {index}: {message}")]
    Gate { index: usize, message: String },
    #[error("gate {index}: unsupported gate kind `{kind}`")]
    UnsupportedGate { index: usize, kind: String },
    #[error("{0}")]
    Shape(String),
}

const KINDS: [&str; 19] = [
    "H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "RX", "RY", "RZ", "P", "U", "CZ", "CX", "ISWAP", "CnZ", "CnX", "CnU",
];

impl QubitCircuit {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, g: QubitGate) -> &mut Self {
        self.gates.push(g);
        self
    }

    pub fn single(&mut self, qubit: usize, gate: SingleQubitGate) -> &mut Self {
        self.push(QubitGate::Single { qubit, gate })
    }

    /// Checks qubit indices and that no gate repeats a qubit.
    pub fn validate(&self) -> Result<(), QubitCircuitError> {
        for (index, g) in self.gates.iter().enumerate() {
            let qs = g.qubits();
            for (k, &q) in qs.iter().enumerate() {
                if q >= self.num_qubits {
                    return Err(QubitCircuitError::Gate { index, message: format!("qubit {q} out of range") });
                }
                if qs[..k].contains(&q) {
                    return Err(QubitCircuitError::Gate { index, message: format!("qubit {q} repeated") });
                }
            }
        }
        Ok(())
    }

    /// Reference unitary, qubit 0 most significant.
    pub fn unitary(&self) -> DMatrix<C64> {
        let n = self.num_qubits;
        let mut u = targets::identity(n);
        for g in &self.gates {
            let m = match g {
                QubitGate::Single { qubit, gate } => targets::controlled(n, &[], *qubit, &gate.matrix()),
                QubitGate::CZ { a, b } => targets::multi_z(n, &[*a, *b]),
                QubitGate::CX { control, target } => targets::controlled(n, &[*control], *target, &pauli_x()),
                QubitGate::ISwap { a, b } => targets::on_qubits(n, &[*a, *b], &iswap()),
                QubitGate::CnZ { controls, target } => {
                    targets::multi_z(n, &controls.iter().copied().chain([*target]).collect::<Vec<_>>())
                }
                QubitGate::CnX { controls, target } => targets::controlled(n, controls, *target, &pauli_x()),
                QubitGate::CnU { controls, target, u } => targets::controlled(n, controls, *target, u),
            };
            u = m * u;
        }
        u
    }

    pub fn to_value(&self) -> Value {
        json!({
            "wires": vec![json!({"dim": 2}); self.num_qubits],
            "gates": self.gates.iter().map(gate_to_value).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        to_canonical_string(&self.to_value())
    }

    pub fn from_value(v: &Value) -> Result<Self, QubitCircuitError> {
        let wires = v
            .get("wires")
            .and_then(Value::as_array)
            .ok_or_else(|| QubitCircuitError::Shape("missing `wires` array".into()))?;
        for w in wires {
            if w.get("dim").and_then(Value::as_u64) != Some(2) {
                return Err(QubitCircuitError::Shape("qubit circuits need every wire to have dim 2".into()));
            }
        }
        let gates = v
            .get("gates")
            .and_then(Value::as_array)
            .ok_or_else(|| QubitCircuitError::Shape("missing `gates` array".into()))?
            .iter()
            .enumerate()
            .map(|(index, g)| {
                let kind = g.get("kind").and_then(Value::as_str).unwrap_or_default();
                if !KINDS.contains(&kind) {
                    return Err(QubitCircuitError::UnsupportedGate { index, kind: kind.to_string() });
                }
                gate_from_value(g).map_err(|message| QubitCircuitError::Gate { index, message })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let c = Self { num_qubits: wires.len(), gates };
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(s: &str) -> Result<Self, QubitCircuitError> {
        Self::from_value(&serde_json::from_str(s)?)
    }
}

/// `|01⟩ ↦ i|10⟩`, `|10⟩ ↦ i|01⟩`.
pub fn iswap() -> DMatrix<C64> {
    let mut m = DMatrix::identity(4, 4);
    m[(1, 1)] = ZERO;
    m[(2, 2)] = ZERO;
    m[(1, 2)] = I;
    m[(2, 1)] = I;
    m
}

/// `[[[re, im], …], …]`, row-major.
pub fn matrix_to_value(m: &Mat2) -> Value {
    json!([[[m[(0, 0)].re, m[(0, 0)].im], [m[(0, 1)].re, m[(0, 1)].im]], [[m[(1, 0)].re, m[(1, 0)].im], [
        m[(1, 1)].re,
        m[(1, 1)].im
    ]]])
}

/// Parses [`matrix_to_value`] output, rejecting non-unitary input.
pub fn matrix_from_value(v: Option<&Value>) -> Result<Mat2, String> {
    let err = || "`matrix` must be [[[re, im], [re, im]], [[re, im], [re, im]]]".to_string();
    let rows = v.and_then(Value::as_array).filter(|r| r.len() == 2).ok_or_else(err)?;
    let mut m = Mat2::zeros();
    for (r, row) in rows.iter().enumerate() {
        let cols = row.as_array().filter(|x| x.len() == 2).ok_or_else(err)?;
        for (col, e) in cols.iter().enumerate() {
            let pair = e.as_array().filter(|x| x.len() == 2).ok_or_else(err)?;
            let re = pair[0].as_f64().ok_or_else(err)?;
            let im = pair[1].as_f64().ok_or_else(err)?;
            m[(r, col)] = c(re, im);
        }
    }
    if !crate::linalg::is_unitary2(&m, 1e-9) {
        return Err("`matrix` is not unitary".into());
    }
    Ok(m)
}

fn gate_to_value(g: &QubitGate) -> Value {
    match g {
        QubitGate::Single { qubit, gate } => {
            let mut v = json!({"kind": gate.name(), "wires": [qubit]});
            match gate {
                SingleQubitGate::Rx(t) | SingleQubitGate::Ry(t) | SingleQubitGate::Rz(t) | SingleQubitGate::P(t) => {
                    v["theta"] = json!(t);
                }
                SingleQubitGate::U(m) => v["matrix"] = matrix_to_value(m),
                _ => {}
            }
            v
        }
        QubitGate::CZ { a, b } => json!({"kind": "CZ", "wires": [a, b]}),
        QubitGate::CX { control, target } => json!({"kind": "CX", "wires": [control, target]}),
        QubitGate::ISwap { a, b } => json!({"kind": "ISWAP", "wires": [a, b]}),
        QubitGate::CnZ { controls, target } => json!({"kind": "CnZ", "controls": controls, "target": target}),
        QubitGate::CnX { controls, target } => json!({"kind": "CnX", "controls": controls, "target": target}),
        QubitGate::CnU { controls, target, u } => {
            json!({"kind": "CnU", "controls": controls, "target": target, "matrix": matrix_to_value(u)})
        }
    }
}

fn gate_from_value(v: &Value) -> Result<QubitGate, String> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or("missing `kind`")?;
    let wires = || -> Result<Vec<usize>, String> {
        v.get("wires")
            .and_then(Value::as_array)
            .ok_or("missing `wires`")?
            .iter()
            .map(|w| w.as_u64().map(|x| x as usize).ok_or_else(|| "wire indices must be integers".to_string()))
            .collect()
    };
    let arity = |n: usize| -> Result<Vec<usize>, String> {
        let w = wires()?;
        if w.len() == n {
            Ok(w)
        } else {
            Err(format!("`{kind}` takes {n} wire(s), got {}", w.len()))
        }
    };
    let theta = || v.get("theta").and_then(Value::as_f64).ok_or_else(|| format!("`{kind}` needs `theta`"));
    let controlled = || -> Result<(Vec<usize>, usize), String> {
        let controls = v
            .get("controls")
            .and_then(Value::as_array)
            .ok_or("missing `controls`")?
            .iter()
            .map(|w| w.as_u64().map(|x| x as usize).ok_or_else(|| "control indices must be integers".to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let target = v.get("target").and_then(Value::as_u64).ok_or("missing `target`")? as usize;
        Ok((controls, target))
    };
    let single = |gate: SingleQubitGate| -> Result<QubitGate, String> { Ok(QubitGate::Single { qubit: arity(1)?[0], gate }) };
    use SingleQubitGate as S;
    match kind {
        "H" => single(S::H),
        "X" => single(S::X),
        "Y" => single(S::Y),
        "Z" => single(S::Z),
        "S" => single(S::S),
        "Sdg" => single(S::Sdg),
        "T" => single(S::T),
        "Tdg" => single(S::Tdg),
        "RX" => single(S::Rx(theta()?)),
        "RY" => single(S::Ry(theta()?)),
        "RZ" => single(S::Rz(theta()?)),
        "P" => single(S::P(theta()?)),
        "U" => single(S::U(matrix_from_value(v.get("matrix"))?)),
        "CZ" => {
            let w = arity(2)?;
            Ok(QubitGate::CZ { a: w[0], b: w[1] })
        }
        "CX" => {
            let w = arity(2)?;
            Ok(QubitGate::CX { control: w[0], target: w[1] })
        }
        "ISWAP" => {
            let w = arity(2)?;
            Ok(QubitGate::ISwap { a: w[0], b: w[1] })
        }
        "CnZ" => controlled().map(|(controls, target)| QubitGate::CnZ { controls, target }),
        "CnX" => controlled().map(|(controls, target)| QubitGate::CnX { controls, target }),
        "CnU" => {
            let (controls, target) = controlled()?;
            Ok(QubitGate::CnU { controls, target, u: matrix_from_value(v.get("matrix"))? })
        }
        other => Err(format!("unsupported gate `{other}`")),
    }
}
