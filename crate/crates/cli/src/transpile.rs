use crate::failure::{Failure, MAPPING, NOT_EQUIVALENT};
use crate::output::Run;
use crate::Common;
use clap::{Args, ValueEnum};
use quditc_core::circuit_ir::json::circuit_to_value;
use quditc_core::embed::{
    canonical_layouts, count_mappings, heuristic_mapping, optimize_mapping, transpile_with, verify_transpiled,
    BackendFamily, EmbedError, NativeBackend, Objective, PairedTopology, QubitCircuit, QubitLayout,
    DEFAULT_BUDGET,
};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Clone, Copy, ValueEnum)]
pub enum BackendArg {
    Cph,
    Xx,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LadderArg {
    Linear,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ObjectiveArg {
    Entangling,
    Depth,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportArg {
    Json,
    Table,
}

#[derive(Args)]
pub struct TranspileArgs {
    /// Qubit circuit JSON.
    #[arg(long)]
    circuit: PathBuf,
    /// Number of qudits.
    #[arg(long)]
    m: usize,
    /// Qubits per qudit.
    #[arg(long)]
    b: usize,
    /// Qudit dimension; defaults to 2^b.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum, default_value = "cph")]
    backend: BackendArg,
    /// Ladder shape for multicontrolled gates over whole qudits.
    #[arg(long, value_enum, default_value = "linear")]
    ladder: LadderArg,
    /// Explicit layout JSON (`{"m", "b", "d", "assignment": [[qudit, slot], ...]}`).
    #[arg(long, conflicts_with_all = ["optimize_mapping", "heuristic"])]
    layout: Option<PathBuf>,
    /// Search all canonical layouts for the cheapest.
    #[arg(long)]
    optimize_mapping: bool,
    /// Use the greedy mapping; with `--optimize-mapping`, only when the search exceeds its budget.
    #[arg(long)]
    heuristic: bool,
    #[arg(long, value_enum, default_value = "entangling")]
    objective: ObjectiveArg,
    /// Largest number of canonical layouts the search may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, value_enum, default_value = "json")]
    report: ReportArg,
    /// Check the lowered circuit against the qubit circuit's unitary.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
pub struct CountArgs {
    /// Qubit positions, `b·m`.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    m: usize,
    /// Also print every canonical layout.
    #[arg(long)]
    list: bool,
}

fn family(b: BackendArg) -> BackendFamily {
    match b {
        BackendArg::Cph => BackendFamily::Cph,
        BackendArg::Xx => BackendFamily::Xx,
    }
}

fn choose_layout(
    args: &TranspileArgs,
    qc: &QubitCircuit,
    d: usize,
    run: &mut Run,
) -> Result<(QubitLayout, &'static str), Failure> {
    if let Some(path) = &args.layout {
        let given: QubitLayout = serde_json::from_str(&run.read_input(path)?)?;
        if (given.m, given.b, given.d) != (args.m, args.b, d) {
            return Err(Failure::invalid("layout file disagrees with --m, --b or --d"));
        }
        return Ok((QubitLayout::new(given.m, given.b, given.d, given.assignment)?, "given"));
    }
    let objective = match args.objective {
        ObjectiveArg::Entangling => Objective::Entangling,
        ObjectiveArg::Depth => Objective::Depth,
    };
    match (args.optimize_mapping, args.heuristic) {
        (true, heuristic) => match optimize_mapping(qc, args.m, args.b, d, family(args.backend), objective, args.budget) {
            Ok((layout, _)) => Ok((layout, "optimized")),
            Err(EmbedError::BudgetExceeded { .. }) if heuristic => Ok((heuristic_mapping(qc, args.m, args.b, d)?, "heuristic")),
            Err(e) => Err(e.into()),
        },
        (false, true) => Ok((heuristic_mapping(qc, args.m, args.b, d)?, "heuristic")),
        (false, false) => Ok((QubitLayout::sequential(qc.num_qubits, args.m, args.b, d)?, "sequential")),
    }
}

/// Per-gate entangling cost of the lowering, one row per qubit gate.
fn table(qc: &QubitCircuit, layout: &QubitLayout, backend: NativeBackend, ladder: PairedTopology) -> Result<String, Failure> {
    let mut s = String::new();
    let _ = writeln!(s, "{:>4}  {:<6}  {:<16}  {:>6}  {:>10}  {:>8}", "#", "gate", "qubits", "qudits", "entangling", "xx_pi/4");
    let (mut total, mut total_pi4) = (0usize, Some(0usize));
    for (i, g) in qc.gates.iter().enumerate() {
        let one = QubitCircuit { num_qubits: qc.num_qubits, gates: vec![g.clone()] };
        let (_, cost) = transpile_with(&one, layout, backend, ladder)?;
        let qubits = g.qubits();
        let mut qudits: Vec<usize> = qubits.iter().map(|&q| layout.assignment[q].0).collect();
        qudits.sort_unstable();
        qudits.dedup();
        let pi4 = cost.xx_pi4_equivalent.map_or("-".to_string(), |k| k.to_string());
        let _ = writeln!(
            s,
            "{:>4}  {:<6}  {:<16}  {:>6}  {:>10}  {:>8}",
            i,
            g.kind_name(),
            format!("{qubits:?}"),
            qudits.len(),
            cost.entangling_count,
            pi4
        );
        total += cost.entangling_count;
        total_pi4 = total_pi4.zip(cost.xx_pi4_equivalent).map(|(a, b)| a + b);
    }
    let pi4 = total_pi4.map_or("-".to_string(), |k| k.to_string());
    let _ = writeln!(s, "{:>4}  {:<6}  {:<16}  {:>6}  {:>10}  {:>8}", "", "total", "", "", total, pi4);
    Ok(s)
}

pub fn run(args: &TranspileArgs, common: &Common) -> Result<(), Failure> {
    let mut run = Run::new("transpile", common.out.as_deref())?;
    let qc = QubitCircuit::from_json(&run.read_input(&args.circuit)?)?;
    if args.b == 0 || args.b >= usize::BITS as usize {
        return Err(Failure::invalid("--b must be between 1 and 63"));
    }
    let d = args.d.unwrap_or(1 << args.b);
    if qc.num_qubits > args.m * args.b {
        return Err(EmbedError::Capacity { n: qc.num_qubits, m: args.m, b: args.b }.into());
    }
    let (layout, mapping) = choose_layout(args, &qc, d, &mut run)?;
    let backend = NativeBackend::for_layout(family(args.backend), &layout);
    let ladder = match args.ladder {
        LadderArg::Linear => PairedTopology::Linear,
        LadderArg::Tree => PairedTopology::Tree,
    };
    let (circuit, cost) = transpile_with(&qc, &layout, backend, ladder)?;
    let verdict = if args.verify { Some(verify_transpiled(&circuit, &qc, &layout, common.tol)?) } else { None };
    let backend_name = family(args.backend).to_string();
    run.param("m", args.m).param("b", args.b).param("d", d).param("backend", backend_name.clone()).param("mapping", mapping);
    let layout_value = serde_json::to_value(&layout)?;
    let cost_value = serde_json::to_value(&cost)?;
    run.emit_json("circuit.json", &circuit_to_value(&circuit))?;
    run.emit_json("layout.json", &layout_value)?;
    run.emit_json("cost.json", &cost_value)?;
    if args.report == ReportArg::Table {
        let mut text = format!(
            "layout ({mapping}): {}\nbackend {backend_name}, {} qudits of dimension {d}\n",
            layout.assignment.iter().enumerate().map(|(q, (w, s))| format!("q{q}->{w}.{s}")).collect::<Vec<_>>().join(" "),
            args.m
        );
        text.push_str(&table(&qc, &layout, backend, ladder)?);
        if let Some(v) = &verdict {
            let _ = writeln!(text, "verified: {}", v.equivalent);
        }
        run.finish_text(&text)?;
    } else {
        let mut summary = json!({
            "backend": backend_name,
            "cost": cost_value,
            "dims": circuit.dims(),
            "layout": layout_value,
            "mapping": mapping,
        });
        if let Some(v) = &verdict {
            summary["verdict"] = serde_json::to_value(v)?;
        }
        run.finish(&summary)?;
    }
    match verdict {
        Some(v) if !v.equivalent => Err(Failure::new(NOT_EQUIVALENT, "lowered circuit is not equivalent")),
        _ => Ok(()),
    }
}

fn count_value(c: u128) -> Value {
    u64::try_from(c).map_or_else(|_| Value::String(c.to_string()), Value::from)
}

pub fn count(args: &CountArgs, common: &Common) -> Result<(), Failure> {
    let mut run = Run::new("count-mappings", common.out.as_deref())?;
    run.param("n", args.n).param("b", args.b).param("m", args.m);
    let c = count_mappings(args.n, args.b, args.m)?;
    let mut summary = json!({"b": args.b, "count": count_value(c), "m": args.m, "n": args.n});
    if args.list {
        if c > DEFAULT_BUDGET {
            return Err(Failure::new(MAPPING, format!("{c} layouts are too many to list")));
        }
        let layouts: Vec<Value> =
            canonical_layouts(args.m, args.b, 1 << args.b).iter().map(|l| json!(l.assignment)).collect();
        summary["layouts"] = Value::Array(layouts);
    }
    run.emit_json("count.json", &summary)?;
    run.finish(&summary)
}
