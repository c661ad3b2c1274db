use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use skdepth::bench::{run_bench, BenchConfig};
use skdepth::compute::{compute, AuditMode, Engine, RunConfig};
use skdepth::experiment::{run_experiment, ExperimentConfig, DEFAULT_HALF_WIDTH};
use skdepth::gadget::{gadget_kind, run_gadget, KindArg};
use skdepth::io::{read_points_file, write_results, OutputFormat};
use skdepth_core::Beta;

/// Beta-skeleton, spherical and lens depth of planar and higher-dimensional points.
#[derive(Parser)]
#[command(name = "skdepth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of every query point with respect to a data set.
    Compute {
        #[arg(long)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        query: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Recheck a sample of queries by brute force (default for n <= 500).
        #[arg(long, conflicts_with = "no_audit")]
        audit: bool,
        #[arg(long)]
        no_audit: bool,
    },
    /// Simplicial, spherical and lens depth on random points in a square.
    Experiment {
        #[arg(long)]
        n_data: usize,
        #[arg(long)]
        n_query: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_HALF_WIDTH)]
        half_width: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Decide whether a list of values has repeats via a depth count.
    Gadget {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        values: Vec<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Time the engines for n in {10^3, 10^4, 10^5}.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Compute {
            beta,
            engine,
            data,
            query,
            format,
            audit,
            no_audit,
        } => {
            let config = RunConfig {
                beta: Beta::new(beta)?,
                engine,
                audit: match (audit, no_audit) {
                    (true, _) => AuditMode::On,
                    (_, true) => AuditMode::Off,
                    _ => AuditMode::Auto,
                },
            };
            let data_set = read_points_file(&data).with_context(|| format!("reading {}", data.display()))?;
            let queries = read_points_file(&query).with_context(|| format!("reading {}", query.display()))?;
            let results = compute(&data_set, &queries, &config)?;
            write_results(&mut out, &results, format)?;
        }
        Command::Experiment {
            n_data,
            n_query,
            seed,
            half_width,
            format,
        } => {
            let report = run_experiment(&ExperimentConfig {
                n_data,
                n_query,
                seed,
                half_width,
            })?;
            report.write(&mut out, format)?;
            for v in report.violations() {
                eprintln!("warning: depth inequality violated at query {}: {v:?}", v.query_index);
            }
        }
        Command::Gadget {
            kind,
            beta,
            values,
            format,
        } => {
            let kind = gadget_kind(kind, beta)?;
            run_gadget(&values, kind)?.write(&mut out, format)?;
        }
        Command::Bench { max_n, seed, repeats } => {
            let report = run_bench(&BenchConfig { max_n, seed, repeats })?;
            report.write_csv(&mut out)?;
            for r in report.disagreements() {
                eprintln!("warning: {} at n={} beta={} disagrees with brute force", r.engine.as_str(), r.n, r.beta);
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
