use crate::failure::Failure;
use crate::output::Run;
use crate::Common;
use clap::{Args, Subcommand};
use quditc_core::circuit_ir::json::circuit_to_value;
use quditc_core::circuit_ir::cost_report;
use quditc_core::embed::{
    compress_3q_to_2qutrits, compression_truth_table, deutsch_circuit, deutsch_qubit_circuit, run_deutsch, scaling_csv,
    scaling_table, transpile, BackendFamily, DeutschOracle, NativeBackend, QubitLayout,
};
use serde_json::{json, Map, Value};

#[derive(Subcommand)]
pub enum DemoCommand {
    /// Deutsch's algorithm with both qubits in one ququart.
    Deutsch(DeutschArgs),
    /// Three qubits packed into two qutrits.
    Compression,
    /// Multicontrolled-phase cost as CSV for several qubits per qudit.
    Scaling(ScalingArgs),
}

#[derive(Args)]
pub struct DeutschArgs {
    /// `constant0`, `constant1`, `balanced0` or `balanced1`; all four when absent.
    #[arg(long)]
    oracle: Option<DeutschOracle>,
    /// Run the qubit circuit lowered onto the ququart instead of the hand-built one.
    #[arg(long)]
    transpiled: bool,
}

#[derive(Args)]
pub struct ScalingArgs {
    /// Qubits per qudit.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
    b: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    max_qudits: usize,
}

/// Rounds away simulation noise so reports are stable.
fn round12(p: f64) -> f64 {
    (p * 1e12).round() / 1e12
}

fn deutsch(args: &DeutschArgs, common: &Common) -> Result<(), Failure> {
    let mut run = Run::new("demo deutsch", common.out.as_deref())?;
    let oracles = match args.oracle {
        Some(o) => vec![o],
        None => DeutschOracle::ALL.to_vec(),
    };
    let mut reports = Vec::new();
    for oracle in oracles {
        let circuit = if args.transpiled {
            let layout = QubitLayout::sequential(2, 1, 2, 4)?;
            transpile(&deutsch_qubit_circuit(oracle), &layout, NativeBackend::for_layout(BackendFamily::Cph, &layout))?.0
        } else {
            deutsch_circuit(oracle)
        };
        let out = run_deutsch(&circuit, oracle)?;
        let distribution: Map<String, Value> = out
            .level_probabilities
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > common.tol)
            .map(|(l, &p)| (l.to_string(), json!(round12(p))))
            .collect();
        let verdict = if out.verdict_constant { "constant" } else { "balanced" };
        run.emit_json(&format!("deutsch_{oracle}.json"), &circuit_to_value(&circuit))?;
        reports.push(json!({
            "correct": out.verdict_constant == oracle.is_constant(),
            "distribution": distribution,
            "entangling": cost_report(&circuit).entangling_count,
            "oracle": oracle.to_string(),
            "p_constant": round12(out.p_constant),
            "verdict": verdict,
        }));
    }
    run.param("transpiled", args.transpiled);
    let summary = if reports.len() == 1 { reports.pop().unwrap() } else { Value::Array(reports) };
    run.finish(&summary)
}

fn compression(common: &Common) -> Result<(), Failure> {
    let mut run = Run::new("demo compression", common.out.as_deref())?;
    let circuit = compress_3q_to_2qutrits();
    let (rows, iso) = compression_truth_table(&circuit)?;
    let gram = iso.adjoint() * &iso;
    let gram_dev = (0..8)
        .flat_map(|r| (0..8).map(move |c| (r, c)))
        .map(|(r, c)| (gram[(r, c)].re - f64::from(u8::from(r == c))).hypot(gram[(r, c)].im))
        .fold(0.0, f64::max);
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"input": r.input, "output": r.output, "probability": round12(r.probability)}))
        .collect();
    run.emit_json("circuit.json", &circuit_to_value(&circuit))?;
    let summary = json!({
        "dims": circuit.dims(),
        "entangling": cost_report(&circuit).entangling_count,
        "isometry_deviation": gram_dev,
        "truth_table": rows,
    });
    run.emit_json("truth_table.json", &summary)?;
    run.finish(&summary)
}

fn scaling(args: &ScalingArgs, common: &Common) -> Result<(), Failure> {
    if args.b.iter().any(|&b| b == 0 || b > 4) {
        return Err(Failure::invalid("--b values must lie in 1..=4"));
    }
    let mut run = Run::new("demo scaling", common.out.as_deref())?;
    run.param("b", args.b.clone()).param("max_qudits", args.max_qudits);
    let csv = scaling_csv(&scaling_table(&args.b, args.max_qudits));
    run.emit("scaling.csv", &csv)?;
    run.finish_text(&csv)
}

pub fn run(cmd: &DemoCommand, common: &Common) -> Result<(), Failure> {
    match cmd {
        DemoCommand::Deutsch(a) => deutsch(a, common),
        DemoCommand::Compression => compression(common),
        DemoCommand::Scaling(a) => scaling(a, common),
    }
}
