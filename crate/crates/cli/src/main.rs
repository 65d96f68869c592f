//! `gue-equiv`: zero-table statistics, sine-kernel references and the
//! verification suite from the command line.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 verification failure.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gue_equiv::estimators::{Sampler, DEFAULT_SAMPLES};
use gue_equiv::verify::SuiteConfig;

use config::{Format, RunConfig, SynthKind, Task};
use error::CliError;

#[derive(Parser)]
#[command(name = "gue-equiv", version, about = "Point-process statistics of zeta zeros against the sine-kernel process")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Plain-text zero table.
    #[arg(long, value_name = "PATH")]
    zeros: Option<PathBuf>,
    /// Number of t-samples per average.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
    /// Midpoint grid in t instead of Monte Carlo.
    #[arg(long, conflicts_with = "mc")]
    grid: bool,
    /// Uniform Monte Carlo in t (default).
    #[arg(long)]
    mc: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Override a verification tolerance.
    #[arg(long = "tolerance", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
    /// Also write the run configuration to this file.
    #[arg(long, value_name = "PATH")]
    save_config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Unfold the zero table with θ(γ)/π.
    Unfold {
        /// Binary cache of unfolded values.
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Binned pair correlation of unfolded zeros.
    Paircorr {
        /// Unfolded height; defaults to the largest the table supports.
        #[arg(long = "T")]
        height: Option<f64>,
        /// Bin width.
        #[arg(long, default_value_t = 0.1)]
        bins: f64,
        #[arg(long, default_value_t = 3.0)]
        max_separation: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Joint occupancy law of unfolded zeros in shifted intervals.
    Occupancy {
        /// Half-open interval (A, B]; repeatable.
        #[arg(long = "interval", value_name = "A,B", value_parser = parse_interval, required = true)]
        intervals: Vec<(f64, f64)>,
        #[arg(long = "T")]
        height: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Law of the spacing vectors to the next K zeros, binned.
    Spacings {
        #[arg(long = "K", default_value_t = 1)]
        big_k: usize,
        /// Number of base points; defaults to all.
        #[arg(long)]
        n: Option<usize>,
        /// Bin width.
        #[arg(long, default_value_t = 0.1)]
        bins: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Gap determinant, spacing density and spacing CDF of the sine process.
    Sineref {
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 3.0)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Time-averaged k-th moment of zero counts in short windows.
    Fujii {
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// Unfolded interval; selects the unfolded variant.
        #[arg(long, value_name = "A,B", value_parser = parse_interval)]
        interval: Option<(f64, f64)>,
        /// Window length A / log T in height units.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long = "T")]
        height: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Synthetic spectra: Poisson, lattice or unfolded GUE bulk.
    Synth {
        #[arg(long, value_enum)]
        kind: SynthKind,
        /// Length of the Poisson or lattice window.
        #[arg(long = "T", default_value_t = 1000.0)]
        length: f64,
        /// GUE matrix dimension.
        #[arg(long, default_value_t = 500)]
        n: usize,
        /// Number of GUE matrices.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the equivalence suite; exits 3 on failure.
    Verify {
        /// Comma-separated criterion numbers; all when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-run from a saved configuration or a previous output file.
    Run {
        config: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected A,B, got {s}"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number {a}"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number {b}"))?;
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(format!("interval ({a}, {b}] is not valid"));
    }
    Ok((a, b))
}

fn build(task: Task, common: Common) -> (RunConfig, Option<PathBuf>, Option<PathBuf>) {
    let config = RunConfig {
        task,
        seed: common.seed,
        samples: common.samples,
        sampler: if common.grid {
            Sampler::Grid
        } else {
            Sampler::MonteCarlo
        },
        format: common.format,
        zeros: common.zeros,
        tolerances: common.tolerances,
    };
    (config, common.out, common.save_config)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (config, out, save) = match cli.command {
        Command::Unfold { cache, common } => build(Task::Unfold { cache }, common),
        Command::Paircorr {
            height,
            bins,
            max_separation,
            common,
        } => build(
            Task::Paircorr {
                height,
                bin_width: bins,
                max_separation,
            },
            common,
        ),
        Command::Occupancy {
            intervals,
            height,
            common,
        } => build(Task::Occupancy { intervals, height }, common),
        Command::Spacings {
            big_k,
            n,
            bins,
            common,
        } => build(
            Task::Spacings {
                big_k,
                n,
                bin_width: bins,
            },
            common,
        ),
        Command::Sineref {
            from,
            to,
            step,
            common,
        } => build(Task::Sineref { from, to, step }, common),
        Command::Fujii {
            k,
            interval,
            a,
            height,
            common,
        } => build(
            Task::Fujii {
                k,
                interval,
                a,
                height,
            },
            common,
        ),
        Command::Synth {
            kind,
            length,
            n,
            count,
            common,
        } => build(
            Task::Synth {
                kind,
                length,
                dim: n,
                count,
            },
            common,
        ),
        Command::Verify { only, common } => build(Task::Verify { only }, common),
        Command::Run { config, out } => (RunConfig::load(&config)?, out, None),
    };
    if let Some(path) = save {
        config.save(&path)?;
    }
    commands::execute(&config, out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
