//! `pcmb`: evaluate inconsistency indices, aggregate matrices, sweep, search
//! for boundary violations, run axiom suites and print the summary table.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcm_bounds::axioms::axiom_suite;
use pcm_bounds::boundary::{render_table_csv, render_table_text, search_violation, summary_table};
use pcm_bounds::indices::{DEFAULT_NI_GAMMA, DEFAULT_NI_SIGMA};
use pcm_bounds::io::{self, parse_number, MatrixFormat, ReadError};
use pcm_bounds::{
    aggregate, evaluate, sweep_pair, BoundaryProperty, Execution, IndexKind, PairwiseComparisonMatrix, PcmError,
    SearchConfig, SimplexWeights,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Expectation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Input(_) => 2,
            CliError::Expectation(_) => 3,
        }
    }
}

impl From<PcmError> for CliError {
    fn from(e: PcmError) -> Self {
        match e {
            PcmError::Parse(_) => CliError::Input(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ReadError> for CliError {
    fn from(e: ReadError) -> Self {
        match &e {
            ReadError::Invalid { source, .. } if !matches!(source, PcmError::Parse(_)) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "pcmb", version, about = "Inconsistency indices and group aggregation of pairwise comparison matrices")]
struct Cli {
    /// Run randomized work on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one index on a matrix; prints JSON.
    Index {
        #[command(flatten)]
        kind: KindArgs,
        /// Matrix file (.csv or .json).
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Weighted geometric mean of several matrices.
    Aggregate {
        /// Member matrix; repeat for each member.
        #[arg(long = "in", value_name = "FILE", required = true)]
        inputs: Vec<PathBuf>,
        /// Comma-separated weights, decimals or fractions. Defaults to uniform.
        #[arg(long)]
        weights: Option<String>,
        /// Output format when writing to standard output.
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Index values along A^lambda B^(1-lambda); prints lambda,value CSV.
    Sweep {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Randomized search for a boundary-property violation; prints JSON.
    Search {
        #[command(flatten)]
        kind: KindArgs,
        /// lb, ub or sub.
        #[arg(long, default_value = "ub")]
        property: String,
        #[command(flatten)]
        run: RunArgs,
        /// Skip the built-in known counterexamples.
        #[arg(long)]
        no_known: bool,
        /// Exit with status 3 unless a violation is found.
        #[arg(long, conflicts_with = "expect_no_violation")]
        expect_violation: bool,
        /// Exit with status 3 if a violation is found.
        #[arg(long)]
        expect_no_violation: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sampled checks of axioms A1-A5; prints JSON.
    Axioms {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// LB / UB / S-UB classification of the nine tabulated indices.
    Table {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct KindArgs {
    /// ci, gci, cistar, icd, k, re, hci, gw, ni or im.
    #[arg(long)]
    kind: String,
    /// NI scale bound.
    #[arg(long, default_value_t = DEFAULT_NI_SIGMA)]
    sigma: f64,
    /// NI normalization constant.
    #[arg(long, default_value_t = DEFAULT_NI_GAMMA)]
    gamma: f64,
}

impl KindArgs {
    fn resolve(&self) -> Result<IndexKind> {
        let kind: IndexKind = self.kind.parse().map_err(|e: PcmError| CliError::Validation(e.to_string()))?;
        Ok(kind.with_ni_params(self.sigma, self.gamma)?)
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OutArgs {
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

fn parse_weights(text: &str) -> Result<SimplexWeights> {
    let parts = text
        .split(',')
        .map(|c| parse_number(c).map_err(|e| CliError::Validation(format!("--weights: {e}"))))
        .collect::<Result<Vec<f64>>>()?;
    Ok(SimplexWeights::new(parts)?)
}

fn search_config(run: &RunArgs, exec: Execution) -> Result<SearchConfig> {
    if run.trials == 0 {
        return Err(CliError::Validation("--trials must be at least 1".into()));
    }
    Ok(SearchConfig {
        exec,
        ..SearchConfig::with_trials(run.trials, run.seed)
    })
}

fn read(path: &Path) -> Result<PairwiseComparisonMatrix> {
    Ok(io::read_matrix(path)?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Index { kind, input, out } => {
            let kind = kind.resolve()?;
            let a = read(&input)?;
            emit(&out, &json(&evaluate(kind, &a)?))
        }
        Command::Aggregate {
            inputs,
            weights,
            format,
            out,
        } => {
            let members = inputs.iter().map(|p| read(p)).collect::<Result<Vec<_>>>()?;
            let weights = match weights {
                Some(w) => parse_weights(&w)?,
                None => SimplexWeights::uniform(members.len())?,
            };
            let agg = aggregate(&members, &weights)?;
            let format = match (&out.out, format) {
                (Some(path), _) => MatrixFormat::from_path(path),
                (None, FileFormat::Csv) => MatrixFormat::Csv,
                (None, FileFormat::Json) => MatrixFormat::Json,
            };
            emit(&out, &io::render(&agg, format))
        }
        Command::Sweep { kind, a, b, steps, out } => {
            let kind = kind.resolve()?;
            if steps < 2 {
                return Err(CliError::Validation("--steps must be at least 2".into()));
            }
            let (a, b) = (read(&a)?, read(&b)?);
            emit(&out, &sweep_pair(&a, &b, kind, steps, exec)?.to_csv())
        }
        Command::Search {
            kind,
            property,
            run,
            no_known,
            expect_violation,
            expect_no_violation,
            out,
        } => {
            let kind = kind.resolve()?;
            let property: BoundaryProperty = property.parse().map_err(|e: PcmError| CliError::Validation(e.to_string()))?;
            let cfg = SearchConfig {
                inject_known: !no_known,
                ..search_config(&run, exec)?
            };
            let verdict = search_violation(kind, property, &cfg)?;
            emit(&out, &json(&verdict))?;
            if expect_violation && !verdict.is_violated() {
                return Err(CliError::Expectation(format!(
                    "expected a {} violation for {kind}, none found in {} trials",
                    property.short(),
                    verdict.trials
                )));
            }
            if expect_no_violation && verdict.is_violated() {
                return Err(CliError::Expectation(format!(
                    "expected no {} violation for {kind}, found one",
                    property.short()
                )));
            }
            Ok(())
        }
        Command::Axioms {
            kind,
            samples,
            seed,
            out,
        } => {
            let kind = kind.resolve()?;
            if samples == 0 {
                return Err(CliError::Validation("--samples must be at least 1".into()));
            }
            emit(&out, &json(&axiom_suite(kind, samples, seed, exec)?))
        }
        Command::Table { run, format, out } => {
            let rows = summary_table(&search_config(&run, exec)?)?;
            let text = match format {
                TableFormat::Text => render_table_text(&rows),
                TableFormat::Csv => render_table_csv(&rows),
            };
            emit(&out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pcmb: {e}");
            ExitCode::from(e.code())
        }
    }
}
