//! `mtmlab` — experiment harness for the multiple-try sampling library.
//!
//! Runs one named scenario against a flat `key = value` config file and
//! emits a CSV table (stdout or `--out`). Every estimate in the output is
//! a deterministic function of (scenario, config, seed); the worker count
//! only changes wall-clock time. Exit codes: 0 success, 2 config error,
//! 3 runtime failure.

mod config;
mod emit;
mod scenarios;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use config::{AppError, ConfigMap};
use scenarios::AdaptFlags;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    /// Expected acceptance at tail states, per weight and candidate pool.
    TailAcceptance,
    /// Time for adaptive chains to reach the bulk, per candidate count.
    AdaptiveConvergence,
    /// Stationary acceptance of the limiting schemes as dimension grows.
    AccRateVsD,
    /// Expected squared jump distance over a proposal-scale grid.
    EsjdSweep,
    /// Closed-form limiting acceptance and speed curves (alias: theory).
    #[value(alias = "theory")]
    SpeedCurves,
    /// Finite candidate pools against the unbounded-pool limit.
    MtmVsIdeal,
    /// Wall-clock scaling of in-step candidate evaluation.
    ParallelBench,
}

#[derive(Parser)]
#[command(
    name = "mtmlab",
    version,
    about = "Experiment harness for the multiple-try sampling library"
)]
struct Cli {
    /// Scenario to run.
    #[arg(value_enum)]
    scenario: Scenario,

    /// Flat `key = value` experiment config (required; may be empty to take
    /// every default).
    #[arg(long)]
    config: PathBuf,

    /// Root seed; all random streams derive from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Threads for fanning out grid cells (and in-step candidate evaluation
    /// where a scenario says so). Never changes results.
    #[arg(long, default_value_t = 1)]
    workers: usize,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Use the full-size sample budgets instead of the quick desk-scale ones.
    #[arg(long)]
    paper_scale: bool,

    /// Omit the `# generated_unix_seconds=…` header line (for byte-identical
    /// reruns).
    #[arg(long)]
    no_meta: bool,

    /// Acknowledge scale adaptation (adaptive-convergence only, where it is
    /// always on).
    #[arg(long)]
    adapt: bool,

    /// Adaptation target acceptance rate override (adaptive-convergence only).
    #[arg(long)]
    target_rate: Option<f64>,

    /// Adaptation learning-rate exponent override (adaptive-convergence only).
    #[arg(long)]
    gamma_exp: Option<f64>,

    /// Initial proposal-scale parameter ℓ (adaptive-convergence only).
    #[arg(long)]
    ell0: Option<f64>,
}

fn run(cli: &Cli) -> Result<(), AppError> {
    if cli.workers == 0 {
        return Err(AppError::Config("--workers must be at least 1".into()));
    }
    let adapt_flags_used =
        cli.adapt || cli.target_rate.is_some() || cli.gamma_exp.is_some() || cli.ell0.is_some();
    if adapt_flags_used && cli.scenario != Scenario::AdaptiveConvergence {
        return Err(AppError::Config(
            "--adapt, --target-rate, --gamma-exp and --ell0 apply to the \
             adaptive-convergence scenario only"
                .into(),
        ));
    }

    let text = std::fs::read_to_string(&cli.config).map_err(|e| {
        AppError::Config(format!(
            "cannot read config `{}`: {e}",
            cli.config.display()
        ))
    })?;
    let cfg = ConfigMap::parse(&text)?;
    let flags = AdaptFlags {
        target_rate: cli.target_rate,
        gamma_exp: cli.gamma_exp,
        ell0: cli.ell0,
    };

    let table = match cli.scenario {
        Scenario::TailAcceptance => {
            scenarios::tail_acceptance(cfg, cli.seed, cli.workers, cli.paper_scale)?
        }
        Scenario::AdaptiveConvergence => {
            scenarios::adaptive_convergence(cfg, cli.seed, cli.workers, cli.paper_scale, flags)?
        }
        Scenario::AccRateVsD => {
            scenarios::acc_rate_vs_d(cfg, cli.seed, cli.workers, cli.paper_scale)?
        }
        Scenario::EsjdSweep => scenarios::esjd_sweep(cfg, cli.seed, cli.workers, cli.paper_scale)?,
        Scenario::SpeedCurves => scenarios::speed_curves(cfg, cli.seed)?,
        Scenario::MtmVsIdeal => {
            scenarios::mtm_vs_ideal(cfg, cli.seed, cli.workers, cli.paper_scale)?
        }
        Scenario::ParallelBench => scenarios::parallel_bench(cfg, cli.seed)?,
    };

    let with_meta = !cli.no_meta;
    match &cli.out {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| {
                AppError::Runtime(format!("cannot write `{}`: {e}", path.display()))
            })?;
            table.write(&mut file, with_meta)?;
            file.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock, with_meta)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
