//! `diamchrome`: list colouring, class recognition and hardness gadgets for
//! graphs of bounded diameter.
//!
//! Exit codes: 0 sat or success, 1 unsat or a failed check, 2 errors,
//! promise violations of a forced solver, and exceeded budgets.

mod commands;
mod input;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diamchrome::colouring::{Colour, DEFAULT_NODE_BUDGET};

pub const SCHEMA_VERSION: u32 = 1;
pub const BUDGET_ENV: &str = "DIAMCHROME_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "diamchrome", version, about = "List colouring of bounded-diameter graph classes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide list colourability, choosing a solver from the graph's class.
    Solve(SolveArgs),
    /// Report membership in every supported class, with witnesses.
    Recognize(RecognizeArgs),
    /// Structural summary: metrics, chromatic number, admitting solvers.
    Analyze(AnalyzeArgs),
    /// Build a hardness gadget and certify it.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Compare solvers or gadgets against the exhaustive oracle.
    Verify(verify::VerifyArgs),
    /// Time the 2-list solver on paths and every solver on a corpus.
    Bench(verify::BenchArgs),
    /// List the registered solvers.
    Solvers,
}

#[derive(Args, Debug)]
pub struct GraphArg {
    /// Graph file in edge-list format, `-` for stdin, or `builtin:<name>`.
    #[arg(long)]
    pub graph: String,
}

#[derive(Args, Debug)]
pub struct BudgetArg {
    /// Node budget for exhaustive search; defaults to $DIAMCHROME_BUDGET,
    /// then 10^7.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
}

impl BudgetArg {
    pub fn resolve(&self) -> anyhow::Result<u64> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                let b: u64 = v.trim().parse().map_err(|_| anyhow::anyhow!("{BUDGET_ENV}=`{v}` is not a number"))?;
                anyhow::ensure!(b > 0, "{BUDGET_ENV} must be positive");
                Ok(b)
            }
            Err(_) => Ok(DEFAULT_NODE_BUDGET),
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// List file (`v: c1 c2 ...` per line); vertices not listed get {1..k}.
    #[arg(long)]
    pub lists: Option<PathBuf>,
    /// Palette size.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub k: Colour,
    /// Force a solver by name instead of choosing one.
    #[arg(long, alias = "class")]
    pub solver: Option<String>,
    /// Diameter bound; defaults to the measured diameter.
    #[arg(long)]
    pub d: Option<usize>,
    /// Star size for the K_{1,r}-based classes.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    #[command(flatten)]
    pub budget: BudgetArg,
}

#[derive(Args, Debug)]
pub struct RecognizeArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Also report almost K_{1,r}-freeness for this r.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Palette used for the solver checks.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub k: Colour,
    #[command(flatten)]
    pub budget: BudgetArg,
}

#[derive(Args, Debug)]
pub struct GenerateOpts {
    /// Write the graph here and the certificate to `<out>.cert.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Skip certification.
    #[arg(long)]
    pub no_certify: bool,
    #[command(flatten)]
    pub budget: BudgetArg,
}

#[derive(Subcommand, Debug)]
pub enum GenerateCommand {
    /// Girth-preserving reduction to diameter at most 4p.
    Gprime {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[command(flatten)]
        opts: GenerateOpts,
    },
    /// Graph of a NAE 3-SAT formula given in DIMACS CNF.
    Nae {
        #[arg(long)]
        cnf: PathBuf,
        #[command(flatten)]
        opts: GenerateOpts,
    },
    /// Claw-free graph to one of diameter at most 4 with independent claw
    /// centres.
    Spread {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        opts: GenerateOpts,
    },
    /// Add a dominating vertex.
    Dominate {
        #[command(flatten)]
        graph: GraphArg,
        /// Colours for the base side of the equivalence check.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=63))]
        k: Colour,
        #[command(flatten)]
        opts: GenerateOpts,
    },
}

/// Outcome of a command, mapped to the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Positive,
    Negative,
    Failure,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(match s {
            Status::Positive => 0,
            Status::Negative => 1,
            Status::Failure => 2,
        })
    }
}

/// A JSON document: schema version, command name, then the body's fields.
#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn json<T: Serialize>(command: &str, body: &T) -> String {
    let doc = Document { schema_version: SCHEMA_VERSION, command, body };
    serde_json::to_string_pretty(&doc).expect("reports serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            Status::Failure.into()
        }
    }
}
