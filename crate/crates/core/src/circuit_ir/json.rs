//! Canonical JSON form of circuits: sorted keys, newline-terminated.

use super::{Gate, MixedRadixCircuit, WireSpec};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("gate {index}: {message}")]
    Gate { index: usize, message: String },
    #[error("{0}")]
    Shape(String),
}

pub fn gate_to_value(g: &Gate) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(g.kind_name()));
    m.insert("wires".into(), json!(g.wires()));
    m.insert("levels".into(), json!(g.levels_per_wire().concat()));
    match *g {
        Gate::Rotation { phi, theta, .. } => {
            m.insert("phi".into(), json!(phi));
            m.insert("theta".into(), json!(theta));
        }
        Gate::Phase { theta, .. } | Gate::ISwap { theta, .. } => {
            m.insert("theta".into(), json!(theta));
        }
        Gate::XX { phi, theta, chi, .. } => {
            m.insert("phi".into(), json!(phi));
            m.insert("theta".into(), json!(theta));
            m.insert("chi".into(), json!(chi));
        }
        Gate::CPh { .. } | Gate::CXGen { .. } => {}
    }
    Value::Object(m)
}

fn usize_list(v: &Value, key: &str) -> Result<Vec<usize>, String> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| format!("missing array `{key}`"))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| format!("`{key}` must hold non-negative integers")))
        .collect()
}

fn angle(v: &Value, key: &str) -> Result<f64, String> {
    v.get(key).and_then(Value::as_f64).ok_or_else(|| format!("missing number `{key}`"))
}

pub fn gate_from_value(v: &Value) -> Result<Gate, String> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or("missing `kind`")?;
    let w = usize_list(v, "wires")?;
    let l = usize_list(v, "levels")?;
    let need = |nw: usize, nl: usize| -> Result<(), String> {
        if w.len() != nw || l.len() != nl {
            Err(format!("{kind} expects {nw} wires and {nl} levels"))
        } else {
            Ok(())
        }
    };
    Ok(match kind {
        "Rotation" => {
            need(1, 2)?;
            Gate::Rotation { wire: w[0], i: l[0], j: l[1], phi: angle(v, "phi")?, theta: angle(v, "theta")? }
        }
        "Phase" => {
            need(1, 1)?;
            Gate::Phase { wire: w[0], i: l[0], theta: angle(v, "theta")? }
        }
        "CPh" => {
            need(2, 2)?;
            Gate::CPh { wire_c: w[0], wire_t: w[1], i: l[0], j: l[1] }
        }
        "CXGen" => {
            need(2, 3)?;
            Gate::CXGen { wire_c: w[0], i: l[0], wire_t: w[1], j: l[1], k: l[2] }
        }
        "ISwap" => {
            need(2, 4)?;
            Gate::ISwap { wire_a: w[0], wire_b: w[1], i: l[0], j: l[1], k: l[2], l: l[3], theta: angle(v, "theta")? }
        }
        "XX" => {
            need(2, 4)?;
            Gate::XX {
                wire_a: w[0],
                wire_b: w[1],
                i: l[0],
                j: l[1],
                k: l[2],
                l: l[3],
                phi: angle(v, "phi")?,
                theta: angle(v, "theta")?,
                chi: angle(v, "chi")?,
            }
        }
        other => return Err(format!("unknown gate kind `{other}`")),
    })
}

pub fn circuit_to_value(c: &MixedRadixCircuit) -> Value {
    json!({
        "wires": c.wires.iter().map(|w| json!({"dim": w.dim})).collect::<Vec<_>>(),
        "gates": c.gates.iter().map(gate_to_value).collect::<Vec<_>>(),
    })
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn circuit_to_json(c: &MixedRadixCircuit) -> String {
    to_canonical_string(&circuit_to_value(c))
}

pub fn circuit_from_value(v: &Value) -> Result<MixedRadixCircuit, JsonError> {
    let wires = v
        .get("wires")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Shape("missing `wires` array".into()))?
        .iter()
        .map(|w| {
            w.get("dim")
                .and_then(Value::as_u64)
                .map(|d| WireSpec { dim: d as usize })
                .ok_or_else(|| JsonError::Shape("wire entries need an integer `dim`".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gates = v
        .get("gates")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Shape("missing `gates` array".into()))?
        .iter()
        .enumerate()
        .map(|(index, g)| gate_from_value(g).map_err(|message| JsonError::Gate { index, message }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MixedRadixCircuit { wires, gates })
}

pub fn circuit_from_json(s: &str) -> Result<MixedRadixCircuit, JsonError> {
    circuit_from_value(&serde_json::from_str(s)?)
}
