//! `maxvis`: max-times spectral analysis and diagonal scaling from the
//! command line.
//!
//! Each subcommand reads one matrix file (standard input when the path is
//! omitted or `-`) and prints a single JSON report on standard output.
//! Diagnostics go to standard error. Exit codes: 0 success, 1 malformed
//! input or usage, 2 a well-formed input rejected on mathematical grounds.

mod commands;
mod oracle;
mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxvis::io::{parse_matrix, parse_vector, ParsedMatrix};
use maxvis::{Method, NumericMode, DEFAULT_TOLERANCE};

use commands::{FromParsed, Task};
use oracle::Stage;
use report::{Report, Timing};

#[derive(Debug, Parser)]
#[command(name = "maxvis", version, about = "Max-times spectral analysis and visualization scalings")]
struct Cli {
    /// Comparison tolerance on log values (float mode).
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Numeric backend; defaults to exact for rational input.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Args)]
struct Input {
    /// Matrix file; standard input when omitted or `-`.
    file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Sum,
    Logconvex,
    Perron,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximum cycle geometric mean λ(A).
    Lambda(Input),
    /// Kleene star A* (requires λ(A) ≤ 1).
    Star(Input),
    /// Critical nodes, edges and components.
    Critical(Input),
    /// Generators of the eigencone or the subeigencone.
    Basis {
        #[arg(long, conflicts_with = "subeigen", required_unless_present = "subeigen")]
        eigen: bool,
        #[arg(long)]
        subeigen: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Dimensions of the eigencone, the subeigencone and their hulls.
    Dims(Input),
    /// Linear rank of A and of the Kleene star of A/λ(A).
    Rank(Input),
    /// Whether A is visualized or strictly visualized.
    Check(Input),
    /// A scaling x making X⁻¹AX strictly visualized.
    Visualize {
        #[arg(long, value_enum, default_value = "sum")]
        method: MethodArg,
        /// Log-convex weights, one per column, comma separated.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<String>>,
        #[command(flatten)]
        input: Input,
    },
    /// Whether a scaling keeps a definite visualized matrix visualized.
    Preserve {
        /// Vector file: dimension, then the entries.
        #[arg(long)]
        scaling: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Quotient matrix over the closure components.
    Quotient(Input),
    /// Maximal permutation and the two-sided visualization scaling.
    Assign(Input),
    /// Compare a fast routine with its brute-force oracle.
    Oracle {
        #[arg(value_enum)]
        stage: Stage,
        /// Matrix file; random matrices when omitted.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(maxvis::Error),
}

impl From<maxvis::Error> for CliError {
    fn from(e: maxvis::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_domain_error() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.timing = Some(Timing { seconds: start.elapsed().as_secs_f64() });
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn load(path: Option<&Path>, mode: Option<Mode>) -> Result<ParsedMatrix, CliError> {
    let parsed = parse_matrix(&read_text(path)?)?;
    match (mode, parsed) {
        (Some(Mode::Float), ParsedMatrix::Exact(a)) => Ok(ParsedMatrix::Float(a.to_float())),
        (Some(Mode::Exact), ParsedMatrix::Float(_)) => {
            Err(CliError::Usage("plus-domain input is inexact; use --mode float".to_string()))
        }
        (_, parsed) => Ok(parsed),
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let (task, input) = match &cli.command {
        Command::Oracle { stage, file, trials, max_n } => return run_oracle(cli, *stage, file.as_deref(), *trials, *max_n),
        Command::Lambda(i) => (Task::Lambda, i),
        Command::Star(i) => (Task::Star, i),
        Command::Critical(i) => (Task::Critical, i),
        Command::Basis { eigen, input, .. } => (Task::Basis { eigen: *eigen }, input),
        Command::Dims(i) => (Task::Dims, i),
        Command::Rank(i) => (Task::Rank, i),
        Command::Check(i) => (Task::Check, i),
        Command::Visualize { method, weights, input } => {
            // Default weights depend on n, so the matrix is read here.
            let parsed = load(input.file.as_deref(), cli.mode)?;
            let method = match method {
                MethodArg::Sum => Method::ColumnSum,
                MethodArg::Perron => Method::Perron,
                MethodArg::Logconvex => commands::weights(weights.as_deref(), parsed.n())?,
            };
            return analyse(cli, "visualize", Task::Visualize { method }, parsed);
        }
        Command::Preserve { scaling, input } => {
            let scaling = parse_vector(&read_text(Some(scaling))?)?;
            (Task::Preserve { scaling }, input)
        }
        Command::Quotient(i) => (Task::Quotient, i),
        Command::Assign(i) => (Task::Assign, i),
    };
    let parsed = load(input.file.as_deref(), cli.mode)?;
    analyse(cli, command_name(&cli.command), task, parsed)
}

fn analyse(cli: &Cli, name: &str, task: Task, parsed: ParsedMatrix) -> Result<Report, CliError> {
    let mut report = Report { command: name.to_string(), n: parsed.n(), ..Default::default() };
    match parsed {
        ParsedMatrix::Exact(a) => run_task(task, a.with_tolerance(cli.tolerance), &mut report)?,
        ParsedMatrix::Float(a) => run_task(task, a.with_tolerance(cli.tolerance), &mut report)?,
    }
    Ok(report)
}

fn run_task<S: FromParsed>(task: Task, a: maxvis::MaxMatrix<S>, report: &mut Report) -> Result<(), CliError> {
    report.mode = mode_name(S::MODE).to_string();
    commands::run(task, &a, report)
}

fn run_oracle(cli: &Cli, stage: Stage, file: Option<&Path>, trials: usize, max_n: usize) -> Result<Report, CliError> {
    let mut report = Report { command: "oracle".to_string(), ..Default::default() };
    let result = match file {
        Some(path) => {
            let parsed = load(Some(path), cli.mode)?;
            report.n = parsed.n();
            report.mode = mode_name(parsed.mode()).to_string();
            match parsed {
                ParsedMatrix::Exact(a) => oracle::run(stage, vec![a.with_tolerance(cli.tolerance)]),
                ParsedMatrix::Float(a) => oracle::run(stage, vec![a.with_tolerance(cli.tolerance)]),
            }
        }
        None => {
            if !(2..=maxvis::spectral::ORACLE_LIMIT).contains(&max_n) {
                return Err(CliError::Usage(format!(
                    "--max-n must lie in 2..={}",
                    maxvis::spectral::ORACLE_LIMIT
                )));
            }
            report.n = max_n;
            let float = cli.mode == Some(Mode::Float);
            report.mode = if float { "float" } else { "exact" }.to_string();
            let inputs = oracle::random_inputs(stage, cli.seed, trials, max_n);
            if float {
                oracle::run(stage, inputs.iter().map(|a| a.to_float().with_tolerance(cli.tolerance)).collect())
            } else {
                oracle::run(stage, inputs)
            }
        }
    }?;
    report.oracle = Some(result);
    Ok(report)
}

fn mode_name(mode: NumericMode) -> &'static str {
    match mode {
        NumericMode::ExactRational => "exact",
        NumericMode::FloatLog => "float",
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lambda(_) => "lambda",
        Command::Star(_) => "star",
        Command::Critical(_) => "critical",
        Command::Basis { .. } => "basis",
        Command::Dims(_) => "dims",
        Command::Rank(_) => "rank",
        Command::Check(_) => "check",
        Command::Visualize { .. } => "visualize",
        Command::Preserve { .. } => "preserve",
        Command::Quotient(_) => "quotient",
        Command::Assign(_) => "assign",
        Command::Oracle { .. } => "oracle",
    }
}
