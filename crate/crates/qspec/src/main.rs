use clap::{Parser, Subcommand};
use qspec::config::{parse_run_config, RunConfig};
use qspec::runner::{run_command, Command};
use std::path::PathBuf;
use std::process::ExitCode;

/// Two-crystal SPDC interferometer scans: spectra, precision analysis and
/// Monte-Carlo estimator validation, emitted as CSV/JSON data files.
#[derive(Parser)]
#[command(name = "qspec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Run-configuration file (key = value lines; empty file for defaults).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for data files.
    #[arg(long, default_value = ".", global = true)]
    out: PathBuf,

    /// Override the configured random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for grid scans and Monte-Carlo trials
    /// (falls back to QSPEC_THREADS, then to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Sub {
    /// Two-dimensional wavelength-angle intensity map.
    Spectrum,
    /// Fixed-wavelength angular cross-section with its fringe extrema.
    CrossSection,
    /// Variances and covariance of (n_i^m, alpha) over the medium-parameter grid.
    VarianceMap,
    /// Normalized Fisher-information regrets along a medium-parameter scan.
    RegretScan,
    /// Trade-off sums for the three extremum selections.
    TradeoffCheck,
    /// Monte-Carlo validation of the predicted covariance.
    #[command(name = "montecarlo")]
    MonteCarlo,
}

fn load_config(cli: &Cli) -> qspec::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            parse_run_config(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn thread_count(cli: &Cli) -> Option<usize> {
    cli.threads.or_else(|| {
        std::env::var("QSPEC_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
}

fn run(cli: &Cli) -> qspec::Result<Vec<PathBuf>> {
    let cfg = load_config(cli)?;
    let cmd = match cli.command {
        Sub::Spectrum => Command::Spectrum,
        Sub::CrossSection => Command::CrossSection,
        Sub::VarianceMap => Command::VarianceMap,
        Sub::RegretScan => Command::RegretScan,
        Sub::TradeoffCheck => Command::TradeoffCheck,
        Sub::MonteCarlo => Command::MonteCarlo,
    };
    match thread_count(cli) {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| qspec::Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(|| run_command(cmd, &cfg, &cli.out)),
        None => run_command(cmd, &cfg, &cli.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json_record());
            ExitCode::FAILURE
        }
    }
}
