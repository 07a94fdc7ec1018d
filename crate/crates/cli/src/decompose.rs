use crate::failure::Failure;
use crate::output::Run;
use crate::{Common, NativeArg};
use clap::{Args, ValueEnum};
use quditc_core::circuit_ir::json::circuit_to_value;
use quditc_core::circuit_ir::{cost_report, spanning_tree, CouplingMap};
use quditc_core::decomp::{decompose, Decomposition, Scheme, TargetKind, Topology, Zyz};
use quditc_core::embed::{matrix_from_value, matrix_to_value};
use quditc_core::linalg::Mat2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::{PI, TAU};
use std::path::PathBuf;

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Cnx,
    Cnz,
    Cnu,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TopologyArg {
    Linear,
    Star,
    Tree,
    Ternary,
}

#[derive(Args)]
pub struct DecomposeArgs {
    kind: KindArg,
    /// Total number of qubits, controls plus target.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "cph")]
    native: NativeArg,
    #[arg(long, value_enum, default_value = "linear")]
    topology: TopologyArg,
    /// Coupling graph for the tree topology: `{"edges": [[a, b], ...], "root": r}`
    /// (root optional); the scheme follows a minimal-height spanning tree.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Wire dimensions overriding the tree scheme's minimal ones.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Realize the central CZ of iSWAP schemes with two iSWAPs.
    #[arg(long)]
    expand_iswap_cz: bool,
    /// Target unitary for `cnu` as `[[[re, im], ...], ...]`; drawn from `--seed` when absent.
    #[arg(long)]
    unitary: Option<PathBuf>,
}

/// Uniformly drawn Euler angles.
fn random_unitary(seed: u64) -> Mat2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = Zyz {
        phi: rng.random_range(0.0..TAU),
        alpha: rng.random_range(0.0..TAU),
        theta: rng.random_range(0.0..PI),
        beta: rng.random_range(0.0..TAU),
    };
    z.matrix()
}

fn tree_topology(args: &DecomposeArgs, run: &mut Run) -> Result<Topology, Failure> {
    let path = args.tree.as_ref().ok_or_else(|| Failure::invalid("--topology tree needs --tree <file>"))?;
    let v: Value = serde_json::from_str(&run.read_input(path)?)?;
    let bad = || Failure::invalid("tree file needs `edges`: [[a, b], ...]");
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|e| match e.as_array().map(|p| p.iter().map(Value::as_u64).collect::<Vec<_>>()) {
            Some(p) if p.len() == 2 && p.iter().all(Option::is_some) => Ok((p[0].unwrap() as usize, p[1].unwrap() as usize)),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let nodes = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1);
    if nodes != args.n {
        return Err(Failure::invalid(format!("tree file spans {nodes} nodes but --n is {}", args.n)));
    }
    let root = v.get("root").and_then(Value::as_u64).map(|r| r as usize);
    let map = CouplingMap::new(nodes, edges)?;
    let tree = spanning_tree(&map, &(0..nodes).collect::<Vec<_>>(), root)?;
    Ok(Topology::Tree { tree, dims: args.dims.clone() })
}

pub fn build(args: &DecomposeArgs, common: &Common, run: &mut Run) -> Result<Decomposition, Failure> {
    if args.dims.is_some() && args.topology != TopologyArg::Tree {
        return Err(Failure::invalid("--dims applies to the tree topology only"));
    }
    let topology = match args.topology {
        TopologyArg::Linear => Topology::Linear,
        TopologyArg::Star => Topology::Star,
        TopologyArg::Ternary => Topology::TernaryLogDepth,
        TopologyArg::Tree => tree_topology(args, run)?,
    };
    let kind = match args.kind {
        KindArg::Cnx => TargetKind::CnX,
        KindArg::Cnz => TargetKind::CnZ,
        KindArg::Cnu => match &args.unitary {
            Some(p) => {
                let v: Value = serde_json::from_str(&run.read_input(p)?)?;
                TargetKind::CnU(matrix_from_value(Some(&v)).map_err(Failure::invalid)?)
            }
            None => TargetKind::CnU(random_unitary(common.seed)),
        },
    };
    let mut scheme = Scheme::new(args.native.into(), topology);
    scheme.expand_iswap_cz = args.expand_iswap_cz;
    Ok(decompose(&kind, args.n, &scheme)?)
}

/// Everything `verify` needs to rebuild the target and embedding.
pub fn target_value(d: &Decomposition) -> Value {
    let mut v = json!({
        "kind": d.kind.name(),
        "num_qubits": d.num_qubits(),
        "target_qubit": d.target_qubit,
        "level_maps": d.embedding.level_maps(),
    });
    if let TargetKind::CnU(u) = &d.kind {
        v["unitary"] = matrix_to_value(u);
    }
    v
}

pub fn run(args: &DecomposeArgs, common: &Common) -> Result<(), Failure> {
    let mut run = Run::new("decompose", common.out.as_deref())?;
    let d = build(args, common, &mut run)?;
    let native = quditc_core::decomp::Native::from(args.native).to_string();
    let topology = args.topology.to_possible_value().unwrap().get_name().to_string();
    run.param("kind", d.kind.name())
        .param("n", args.n)
        .param("native", native.clone())
        .param("topology", topology.clone())
        .param("expand_iswap_cz", args.expand_iswap_cz);
    if let Some(dims) = &args.dims {
        run.param("dims", dims.clone());
    }
    if matches!(args.kind, KindArg::Cnu) && args.unitary.is_none() {
        run.param("seed", common.seed);
    }
    let cost = serde_json::to_value(cost_report(&d.circuit))?;
    let target = target_value(&d);
    run.emit_json("circuit.json", &circuit_to_value(&d.circuit))?;
    run.emit_json("cost.json", &cost)?;
    run.emit_json("target.json", &target)?;
    run.finish(&json!({
        "cost": cost,
        "dims": d.circuit.dims(),
        "gates": d.circuit.gates.len(),
        "native": native,
        "target": target,
        "topology": topology,
    }))
}
