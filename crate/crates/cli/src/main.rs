mod bench;
mod frontfile;

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hvlc::{con_exact, hyp, solve, DatasetKind, ExactAlgo, RaceConfig};

use bench::{run_bench, BenchParams, CSV_HEADER};
use frontfile::{read_front, write_front};

#[derive(Parser)]
#[command(
    name = "hvlc",
    about = "Least hypervolume contributor: racing solver, exact oracles and benchmark datasets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DatasetArg {
    Linear,
    Spherical,
    Concave,
    Random1,
    Random2,
}

impl DatasetArg {
    fn kind(self) -> DatasetKind {
        match self {
            DatasetArg::Linear => DatasetKind::Linear,
            DatasetArg::Spherical => DatasetKind::Spherical,
            DatasetArg::Concave => DatasetKind::Concave,
            DatasetArg::Random1 => DatasetKind::Random1,
            DatasetArg::Random2 => DatasetKind::Random2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Hso,
    Inclexcl,
}

impl AlgoArg {
    fn algo(self) -> ExactAlgo {
        match self {
            AlgoArg::Hso => ExactAlgo::Hso,
            AlgoArg::Inclexcl => ExactAlgo::InclusionExclusion,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark front and write it as a front file
    Gen {
        #[arg(long, value_enum)]
        dataset: DatasetArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find a least contributor with the (1+epsilon, 1-delta) guarantee
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-2)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.2)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Disable the extra width push on the current leader
        #[arg(long)]
        no_push: bool,
        /// Disable switching small subproblems to exact computation
        #[arg(long)]
        no_exact_switch: bool,
        /// Emit the result as a JSON object instead of a key=value line
        #[arg(long)]
        json: bool,
    },
    /// Print the exact hypervolume and every box's exact contribution
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgoArg::Hso)]
        algo: AlgoArg,
    },
    /// Sweep front sizes and write per-cell median runtimes as CSV
    Bench {
        #[arg(long, value_enum)]
        dataset: DatasetArg,
        #[arg(long)]
        d: usize,
        /// Comma-separated list of front sizes
        #[arg(long, value_delimiter = ',', conflicts_with = "n_grid_expk")]
        n_list: Option<Vec<usize>>,
        /// Log-spaced grid floor(exp(k/100)) up to this size
        #[arg(long, conflicts_with = "n_list")]
        n_grid_expk: Option<usize>,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 1e-2)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

/// Writes a line to stdout, exiting quietly when the reading end of a pipe
/// has gone away (e.g. `hvlc exact ... | head`).
fn emit(line: std::fmt::Arguments) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if writeln!(lock, "{line}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! emit {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Gen {
            dataset,
            n,
            d,
            seed,
            out,
        } => {
            let front = hvlc::generate(dataset.kind(), n, d, seed)?;
            write_front(&front, &out)?;
        }
        Command::Solve {
            input,
            epsilon,
            delta,
            gamma,
            alpha,
            seed,
            no_push,
            no_exact_switch,
            json,
        } => {
            let front = read_front(&input)?;
            let mut config = RaceConfig::new(epsilon, delta).with_seed(seed);
            config.gamma = gamma;
            config.alpha = alpha;
            config.enable_push = !no_push;
            config.enable_exact_switch = !no_exact_switch;
            let result = solve(&front, &config)?;
            let seconds = result.elapsed.as_secs_f64();
            // Scientific notation keeps the tiny volumes of high-dimensional
            // instances readable; shortest-digit printing stays lossless.
            if json {
                emit!(
                    "{{\"index\":{},\"estimate\":{:e},\"rounds\":{},\"samples\":{},\"exact_switches\":{},\"seconds\":{}}}",
                    result.index,
                    result.estimate,
                    result.rounds,
                    result.total_samples,
                    result.exact_switches,
                    seconds
                );
            } else {
                emit!(
                    "index={} estimate={:e} rounds={} samples={} exact_switches={} seconds={}",
                    result.index,
                    result.estimate,
                    result.rounds,
                    result.total_samples,
                    result.exact_switches,
                    seconds
                );
            }
        }
        Command::Exact { input, algo } => {
            let front = read_front(&input)?;
            let algo = algo.algo();
            emit!("hyp={:e}", hyp(&front, algo)?);
            for idx in 0..front.len() {
                emit!("con[{}]={:e}", idx, con_exact(&front, idx, algo)?);
            }
        }
        Command::Bench {
            dataset,
            d,
            n_list,
            n_grid_expk,
            reps,
            epsilon,
            delta,
            seed,
            out,
        } => {
            let n_values = match (n_list, n_grid_expk) {
                (Some(list), None) => list,
                (None, Some(max)) => bench::exp_grid(max),
                _ => anyhow::bail!("exactly one of --n-list and --n-grid-expk is required"),
            };
            let params = BenchParams {
                kind: dataset.kind(),
                d,
                n_values,
                reps,
                epsilon,
                delta,
                seed,
            };
            let records = run_bench(&params)?;
            let mut csv = String::from(CSV_HEADER);
            csv.push('\n');
            for record in &records {
                csv.push_str(&record.to_csv_row());
                csv.push('\n');
            }
            fs::write(&out, csv).with_context(|| format!("cannot write {}", out.display()))?;
        }
    }
    Ok(())
}
