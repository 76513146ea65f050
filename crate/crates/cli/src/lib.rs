//! Command-line front end: every subcommand writes its evidence under `--out`
//! and returns a JSON [`RunReport`].

pub mod dataset;
pub mod report;
pub mod table1;

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::{Artifact, ArtifactSink, RunReport};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// Exit code 1.
    #[error("verdict mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Mismatch(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kscolor", version, about = "Kochen-Specker colorability of idempotent matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for certificates and reports.
    #[arg(long, global = true, default_value = "kscolor-out")]
    pub out: PathBuf,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Depth of parallel branching in the solver; 0 solves sequentially.
    #[arg(long, global = true, default_value_t = 0)]
    pub parallel: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DatasetArgs {
    /// Bundled name (f5_25, z28, schutte), family (proj-p<p>, proj1-p<p>, idpt-p<p>, idpt1-p<p>) or JSON path.
    #[arg(long)]
    pub dataset: String,
    /// Ring descriptor; entries are carried into this ring.
    #[arg(long)]
    pub ring: Option<String>,
    /// Location of the Schütte vectors.
    #[arg(long)]
    pub schutte: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Idempotents,
    Projections,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gaussian binomials and idempotent counts of M_n(F_q).
    Count {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Writes the idempotents or projections of M_n(F_p) by rank.
    Enumerate {
        #[arg(long, default_value = "GF(2)")]
        ring: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Idempotents)]
        kind: Kind,
    },
    /// Decides colorability of a dataset and writes the certificate.
    Color(DatasetArgs),
    /// Reproduces the colorability and spectrum table.
    VerifyTable1 {
        #[arg(long)]
        schutte: Option<PathBuf>,
    },
    /// Lifts an uncolorable set one dimension up and solves it.
    Lift(DatasetArgs),
    /// Closes a set under conjugation by permutation matrices and solves it.
    Closure(DatasetArgs),
    /// Extends every coloring of the projections of M_3(F_p) to a morphism and verifies it.
    Morphism {
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Seeded commuting integer pairs checked through the composite.
        #[arg(long, default_value_t = 500)]
        pairs: usize,
    },
    /// Tests a subset of the generated partial Boolean algebra for being a prime partial ideal.
    CheckIdeal {
        #[command(flatten)]
        data: DatasetArgs,
        /// Comma-separated element indices of the algebra dump.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
    /// Writes the constraint system in DIMACS CNF.
    ExportCnf {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long)]
        cnf: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Enumerate { .. } => "enumerate",
            Command::Color(_) => "color",
            Command::VerifyTable1 { .. } => "verify-table1",
            Command::Lift(_) => "lift",
            Command::Closure(_) => "closure",
            Command::Morphism { .. } => "morphism",
            Command::CheckIdeal { .. } => "check-ideal",
            Command::ExportCnf { .. } => "export-cnf",
        }
    }
}

/// What a command produced before the report is assembled.
#[derive(Debug)]
pub(crate) struct CommandOutput {
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub verdicts: serde_json::Value,
    /// Set when an observed verdict contradicts an expected one.
    pub mismatch: Option<String>,
}

#[derive(Debug)]
pub struct Run {
    pub code: i32,
    pub report: Option<RunReport>,
    /// Diagnostics for standard error.
    pub message: Option<String>,
}

/// Parses `args` (program name first), runs the command and writes
/// `<command>.report.json` into the output directory.
pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Run { code, report: None, message: Some(e.render().to_string()) };
        }
    };
    run_cli(cli)
}

pub fn run_cli(cli: Cli) -> Run {
    let start = Instant::now();
    let name = cli.command.name();
    let mut sink = match ArtifactSink::new(&cli.out) {
        Ok(s) => s,
        Err(e) => return Run { code: e.exit_code(), report: None, message: Some(e.to_string()) },
    };
    let output = match commands::dispatch(&cli, &mut sink) {
        Ok(o) => o,
        Err(e) => return Run { code: e.exit_code(), report: None, message: Some(e.to_string()) },
    };
    let report_path = sink.dir().join(format!("{name}.report.json"));
    let report = RunReport {
        command: name.into(),
        tool_version: TOOL_VERSION.into(),
        input_digest: output.input_digest,
        seed: output.seed,
        verdicts: output.verdicts,
        certificates: sink.into_artifacts(),
        wall_time_ms: start.elapsed().as_millis(),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Err(e) = std::fs::write(&report_path, format!("{text}\n")) {
        return Run { code: 2, report: Some(report), message: Some(format!("cannot write {}: {e}", report_path.display())) };
    }
    let code = if output.mismatch.is_some() { 1 } else { 0 };
    Run { code, report: Some(report), message: output.mismatch.map(|m| format!("verdict mismatch: {m}")) }
}
