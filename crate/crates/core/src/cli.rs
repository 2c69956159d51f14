//! Command-line front end. The binary is a thin wrapper around [`main_with`]
//! so the commands can be driven in-process by tests.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{normalized_spread, run_bench, BenchConfig};
use crate::check::{self, CheckConfig};
use crate::engine::{refine, Mode};
use crate::graph::FuzzyGraph;
use crate::oracle::{random_graph, GenerateError};
use crate::partition::PartitionResult;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fuzzbisim",
    version,
    about = "Largest crisp bisimulations of fuzzy labeled graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the partition of the largest bisimulation of a graph file.
    Run(RunArgs),
    /// Cross-check the engine against the naive oracle on random graphs.
    Check(CheckArgs),
    /// Time the engine on random graphs of growing size.
    Bench(BenchArgs),
    /// Write a random graph in the text format.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Graph file; `-` reads standard input.
    #[arg(short, long)]
    input: PathBuf,
    /// Use bisimulation with counting successors.
    #[arg(long)]
    counting: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include wall time in JSON output (text output always reports it on
    /// standard error).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest vertex count.
    #[arg(long, default_value_t = 12)]
    n: usize,
    /// Largest edge count.
    #[arg(long, default_value_t = 40)]
    m: usize,
    /// Largest number of distinct degrees.
    #[arg(long, default_value_t = 6)]
    l: usize,
    /// Largest number of edge labels.
    #[arg(long, default_value_t = 2)]
    labels: usize,
    /// Check only the counting variant.
    #[arg(long)]
    counting: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Vertex counts to run; defaults to 1024, 2048, ..., 16384.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Edges per vertex.
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 8)]
    l: usize,
    #[arg(long, default_value_t = 2)]
    labels: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    counting: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 1)]
    labels: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct RunStats {
    n: usize,
    m: usize,
    l: usize,
    blocks: usize,
    split_calls: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
struct RunReport {
    mode: Mode,
    partition: PartitionResult,
    stats: RunStats,
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a, out, err),
        Command::Check(a) => cmd_check(a, out, err),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: crate::graph::GraphError,
    },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Write(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn mode(counting: bool) -> Mode {
    if counting {
        Mode::Counting
    } else {
        Mode::Plain
    }
}

fn cmd_run(a: RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let path = a.input.display().to_string();
    let text = if path == "-" {
        io::read_to_string(io::stdin())
    } else {
        fs::read_to_string(&a.input)
    }
    .map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let g = FuzzyGraph::parse(&text).map_err(|source| CliError::Parse { path, source })?;
    let run = refine(&g, mode(a.counting), &mut ());
    let millis = run.elapsed.as_secs_f64() * 1e3;
    let report = RunReport {
        mode: mode(a.counting),
        stats: RunStats {
            n: run.stats.vertices,
            m: run.stats.edges,
            l: run.stats.distinct_degrees,
            blocks: run.stats.blocks,
            split_calls: run.stats.split_calls,
            wall_time_ms: a.timing.then_some(millis),
        },
        partition: run.partition,
    };
    match a.format {
        Format::Text => {
            write!(out, "{}", report.partition)?;
            let s = &report.stats;
            writeln!(
                err,
                "n={} m={} l={} blocks={} splits={} time={millis:.3}ms",
                s.n, s.m, s.l, s.blocks, s.split_calls
            )?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = CheckConfig {
        cases: a.cases,
        seed: a.seed,
        max_n: a.n,
        max_m: a.m,
        max_l: a.l,
        max_labels: a.labels,
        plain: !a.counting,
        counting: true,
        fail_fast: true,
    };
    let report = check::run_check(&cfg, check::engine);
    if let Some(w) = report.warning() {
        writeln!(err, "{w}")?;
    }
    match a.format {
        Format::Text => {
            writeln!(out, "{report}")?;
            for c in &report.counterexamples {
                writeln!(out, "counterexample:")?;
                writeln!(out, "{}", serde_json::to_string_pretty(c)?)?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
    }
    Ok(if report.ok() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut cfg = BenchConfig {
        edge_factor: a.m,
        l: a.l,
        labels: a.labels,
        seed: a.seed,
        mode: mode(a.counting),
        ..BenchConfig::default()
    };
    if !a.n.is_empty() {
        cfg.sizes = a.n;
    }
    let rows = run_bench(&cfg)?;
    match a.format {
        Format::Text => {
            writeln!(
                out,
                "n\tm\tl\tseconds\tsplits\tmax_participation\tceil_log2_n\tnormalized_ns"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{:.6}\t{}\t{}\t{}\t{:.3}",
                    r.n,
                    r.m,
                    r.l,
                    r.seconds,
                    r.split_calls,
                    r.max_participation,
                    r.log2_n,
                    r.normalized_ns
                )?;
            }
            writeln!(out, "# normalized spread {:.2}x", normalized_spread(&rows))?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = random_graph(a.n, a.m, a.l, a.labels, a.seed)?;
    let text = g.to_text();
    match a.out {
        Some(path) => fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}
