//! `quditc`: decompose multicontrolled gates onto qudits, check circuits
//! against qubit targets and lower qubit circuits onto multi-qubit qudits.

mod decompose;
mod demo;
mod failure;
mod output;
mod transpile;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use failure::Failure;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quditc", version, about = "Qudit-assisted compilation of qubit circuits")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Equivalence tolerance on distance, leakage and entrywise deviation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomly drawn unitaries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory receiving emitted files and `manifest.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a multicontrolled gate from native qudit gates.
    Decompose(decompose::DecomposeArgs),
    /// Check a circuit against a qubit-space target on its embedded subspace.
    Verify(verify::VerifyArgs),
    /// Lower a qubit circuit onto qudits holding several qubits each.
    Transpile(transpile::TranspileArgs),
    /// Number of ways to group qubits onto identical qudits.
    CountMappings(transpile::CountArgs),
    /// Small worked examples.
    #[command(subcommand)]
    Demo(demo::DemoCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NativeArg {
    #[value(alias = "cph_cx")]
    Cph,
    Xx,
    Iswap,
}

impl From<NativeArg> for quditc_core::decomp::Native {
    fn from(n: NativeArg) -> Self {
        match n {
            NativeArg::Cph => Self::CphCx,
            NativeArg::Xx => Self::Xx,
            NativeArg::Iswap => Self::Iswap,
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Decompose(a) => decompose::run(&a, &cli.common),
        Command::Verify(a) => verify::run(&a, &cli.common),
        Command::Transpile(a) => transpile::run(&a, &cli.common),
        Command::CountMappings(a) => transpile::count(&a, &cli.common),
        Command::Demo(d) => demo::run(&d, &cli.common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("quditc: {f}");
            ExitCode::from(f.code)
        }
    }
}
