use crate::failure::{Failure, NOT_EQUIVALENT, VERIFY_BUDGET};
use crate::output::Run;
use crate::Common;
use clap::Args;
use quditc_core::circuit_ir::json::circuit_from_json;
use quditc_core::embed::matrix_from_value;
use quditc_core::linalg::{pauli_x, Mat2};
use quditc_core::mrsim::{equivalent_on_subspace, oracle_workload_bytes, targets, SubspaceEmbedding};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

const DEFAULT_BUDGET_MB: u64 = 512;

#[derive(Args)]
pub struct VerifyArgs {
    /// Mixed-radix circuit JSON.
    #[arg(long)]
    circuit: PathBuf,
    /// `identity`, `ccx`, `cnx`, `cnz`, or a `target.json` written by `decompose`.
    #[arg(long)]
    target: String,
    /// Target qubit for named `cnx` targets; defaults to the last qubit.
    #[arg(long)]
    target_qubit: Option<usize>,
    /// `one-per-wire`, `binary:<b>`, or a JSON file with `level_maps`. Defaults
    /// to the target file's embedding, else one qubit per wire.
    #[arg(long)]
    embedding: Option<String>,
}

fn budget_bytes() -> Result<u128, Failure> {
    let mb = match std::env::var("QUDITC_BUDGET_MB") {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| Failure::invalid(format!("QUDITC_BUDGET_MB=`{s}` is not an integer")))?,
        Err(_) => DEFAULT_BUDGET_MB,
    };
    Ok(u128::from(mb) << 20)
}

fn level_maps(v: &Value) -> Result<Vec<Vec<usize>>, Failure> {
    serde_json::from_value(v.clone()).map_err(|e| Failure::invalid(format!("bad `level_maps`: {e}")))
}

fn embedding_from(spec: &str, dims: &[usize], run: &mut Run) -> Result<SubspaceEmbedding, Failure> {
    if spec == "one-per-wire" {
        return Ok(SubspaceEmbedding::one_per_wire(dims));
    }
    if let Some(b) = spec.strip_prefix("binary:") {
        let b = b.parse().map_err(|_| Failure::invalid(format!("bad embedding `{spec}`")))?;
        return Ok(SubspaceEmbedding::binary(dims, b)?);
    }
    let v: Value = serde_json::from_str(&run.read_input(Path::new(spec))?)?;
    let maps = v.get("level_maps").ok_or_else(|| Failure::invalid(format!("{spec} has no `level_maps`")))?;
    Ok(SubspaceEmbedding::new(dims, level_maps(maps)?)?)
}

struct TargetSpec {
    name: String,
    n: Option<usize>,
    target_qubit: Option<usize>,
    unitary: Option<Mat2>,
    level_maps: Option<Vec<Vec<usize>>>,
}

fn target_spec(args: &VerifyArgs, run: &mut Run) -> Result<TargetSpec, Failure> {
    if matches!(args.target.as_str(), "identity" | "ccx" | "cnx" | "cnz") {
        return Ok(TargetSpec {
            name: args.target.clone(),
            n: None,
            target_qubit: args.target_qubit,
            unitary: None,
            level_maps: None,
        });
    }
    let path = Path::new(&args.target);
    if !path.exists() {
        return Err(Failure::invalid(format!(
            "unknown target `{}` (expected identity, ccx, cnx, cnz or a target file)",
            args.target
        )));
    }
    let v: Value = serde_json::from_str(&run.read_input(path)?)?;
    let name = v.get("kind").and_then(Value::as_str).ok_or_else(|| Failure::invalid("target file needs `kind`"))?;
    let usize_field = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize);
    Ok(TargetSpec {
        name: name.to_string(),
        n: usize_field("num_qubits"),
        target_qubit: args.target_qubit.or(usize_field("target_qubit")),
        unitary: v.get("unitary").map(|u| matrix_from_value(Some(u))).transpose().map_err(Failure::invalid)?,
        level_maps: v.get("level_maps").map(level_maps).transpose()?,
    })
}

pub fn run(args: &VerifyArgs, common: &Common) -> Result<(), Failure> {
    let mut run = Run::new("verify", common.out.as_deref())?;
    let circuit = circuit_from_json(&run.read_input(&args.circuit)?).map_err(|e| Failure::invalid(e.to_string()))?;
    let dims = circuit.dims();
    let spec = target_spec(args, &mut run)?;
    let emb = match (&args.embedding, &spec.level_maps) {
        (Some(e), _) => embedding_from(e, &dims, &mut run)?,
        (None, Some(maps)) => SubspaceEmbedding::new(&dims, maps.clone())?,
        (None, None) => SubspaceEmbedding::one_per_wire(&dims),
    };
    let n = emb.num_qubits();
    if spec.n.is_some_and(|want| want != n) {
        return Err(Failure::invalid(format!("target has {} qubits, embedding has {n}", spec.n.unwrap())));
    }
    let t = spec.target_qubit.unwrap_or(n.saturating_sub(1));
    if t >= n.max(1) {
        return Err(Failure::invalid(format!("target qubit {t} out of range for {n} qubits")));
    }
    let controls: Vec<usize> = (0..n).filter(|&q| q != t).collect();
    let target = match spec.name.as_str() {
        "identity" => targets::identity(n),
        "ccx" if n != 3 => return Err(Failure::invalid(format!("ccx needs 3 embedded qubits, found {n}"))),
        "ccx" | "cnx" => targets::controlled(n, &controls, t, &pauli_x()),
        "cnz" => targets::cnz(n),
        "cnu" => {
            let u = spec.unitary.ok_or_else(|| Failure::invalid("cnu target needs `unitary`"))?;
            targets::controlled(n, &controls, t, &u)
        }
        other => return Err(Failure::invalid(format!("unknown target kind `{other}`"))),
    };
    let workload = oracle_workload_bytes(&circuit, &emb);
    let budget = budget_bytes()?;
    if workload > budget {
        return Err(Failure::new(
            VERIFY_BUDGET,
            format!(
                "verification needs about {} MiB ({} embedded columns of length {}), budget is {} MiB; raise QUDITC_BUDGET_MB",
                workload.div_ceil(1 << 20),
                1u128 << n,
                circuit.dim_product(),
                budget >> 20
            ),
        ));
    }
    let verdict = equivalent_on_subspace(&circuit, &target, &emb, common.tol)?;
    run.param("target", spec.name.clone()).param("tol", common.tol).param("target_qubit", t);
    let report = json!({
        "target": spec.name,
        "tol": common.tol,
        "verdict": serde_json::to_value(verdict)?,
        "workload_bytes": workload as u64,
    });
    run.emit_json("verdict.json", &report)?;
    run.finish(&report)?;
    if verdict.equivalent {
        Ok(())
    } else {
        Err(Failure::new(NOT_EQUIVALENT, "circuit is not equivalent to the target"))
    }
}
