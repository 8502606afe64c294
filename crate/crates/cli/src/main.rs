use std::path::PathBuf;
use std::process::ExitCode;

use avalanche_cli::tables::{table_csv, Table};
use avalanche_cli::{cmd_generate, cmd_verify, Backend, CliError, Format, Suite, SweepConfig};
use clap::{Parser, Subcommand};

/// Verify, generate and tabulate hyperbolic chains.
#[derive(Debug, Parser)]
#[command(name = "avk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a property suite over a grid of good pairs and write one row per check.
    Verify {
        #[arg(long, value_enum, default_value = "ap")]
        suite: Suite,
        /// Good pair `a,b`; repeat for a grid. Defaults to the suite's grid.
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(f64, f64)>,
        /// Step counts, comma separated. Defaults to the suite's list.
        #[arg(long = "n", value_delimiter = ',')]
        ns: Vec<usize>,
        /// Chains per (pair, n) cell. Defaults to the suite's count.
        #[arg(long)]
        samples: Option<usize>,
        /// Root seed; the AVK_SEED environment variable takes precedence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "h2")]
        backend: Backend,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        /// Check a chain or matrix chain from a JSON file instead of sampling.
        #[arg(long)]
        from_file: Option<PathBuf>,
    },
    /// Print one sampled good chain as JSON.
    Generate {
        #[arg(long = "pair", value_parser = parse_pair)]
        pair: (f64, f64),
        #[arg(long = "n", default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "h2")]
        backend: Backend,
        /// Emit a matrix chain whose orbit is good instead of a chain.
        #[arg(long)]
        matrix: bool,
    },
    /// Print a worked example as CSV.
    Table {
        #[arg(value_enum)]
        example: Table,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn seed_override(seed: u64) -> Result<u64, CliError> {
    match std::env::var("AVK_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("AVK_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(seed),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify {
            suite,
            pairs,
            ns,
            samples,
            seed,
            backend,
            out,
            format,
            from_file,
        } => {
            let mut cfg = SweepConfig::defaults(suite);
            // with a file, only an explicit --pair overrides the file's pair
            if !pairs.is_empty() || from_file.is_some() {
                cfg.pairs = pairs;
            }
            if !ns.is_empty() {
                cfg.ns = ns;
            }
            cfg.samples = samples.unwrap_or(cfg.samples);
            cfg.seed = seed_override(seed)?;
            cfg.backend = backend;
            cfg.out = out;
            cfg.format = format;
            let report = cmd_verify(&cfg, from_file.as_deref())?;
            for r in report.violations() {
                eprintln!(
                    "violation: check={} seed={} a={} b={} n={} tau={} bound={} margin={}",
                    r.check, r.seed, r.a, r.b, r.n, r.tau, r.bound, r.margin
                );
            }
            let bad = report.violations().count();
            eprintln!(
                "{} rows, {bad} violations, {} skipped",
                report.rows.len(),
                report.skipped
            );
            Ok(if bad == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Generate {
            pair,
            n,
            seed,
            backend,
            matrix,
        } => {
            print!(
                "{}",
                cmd_generate(pair, n, seed_override(seed)?, backend, matrix)?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { example } => {
            print!("{}", table_csv(example));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
