use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spinres_cli::commands::{self, Jitter};
use spinres_cli::config::Config;
use spinres_cli::emit::{emit, Format};
use spinres_cli::CliError;

/// Steady-state, bistability and gain analyses of a parametrically driven
/// spin resonator under two competing models.
#[derive(Parser)]
#[command(name = "spinres", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat key = value parameter file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Seed for optional grid jitter.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative grid jitter fraction (off by default).
    #[arg(long, default_value_t = 0.0)]
    jitter: f64,
    /// Worker threads for sweeps (defaults to the rayon heuristic).
    #[arg(long)]
    threads: Option<usize>,
    /// Override a config key, e.g. --set alpha=0.8 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the two-spin master equation from one Bloch direction.
    TwoSpinEvolve(Common),
    /// Cluster equator trajectories into attractors and basins.
    TwoSpinBasins(Common),
    /// Steady-state polarization branches over a detuning sweep.
    RdSteady(Common),
    /// Bistability onset points (or invert the lower onset for D).
    RdOnset(Common),
    /// Phase-dependent gain of the rapid-disentanglement model.
    RdGain(Common),
    /// Magnon-number branches over a detuning sweep.
    BosonSteady(Common),
    /// Bosonization bistability threshold closed forms.
    BosonOnset(Common),
    /// Phase-dependent bosonization gain.
    BosonGain(Common),
    /// Hysteresis (jump-point) mapping over a power–detuning grid.
    MapBistability(Common),
    /// Peak-point frequency-shift curves over drive powers.
    PeakCurves(Common),
    /// Side-by-side hysteresis maps and region-topology diagnostics.
    CompareModels(Common),
}

impl Command {
    fn split(&self) -> (&'static str, &Common) {
        match self {
            Command::TwoSpinEvolve(c) => ("two-spin-evolve", c),
            Command::TwoSpinBasins(c) => ("two-spin-basins", c),
            Command::RdSteady(c) => ("rd-steady", c),
            Command::RdOnset(c) => ("rd-onset", c),
            Command::RdGain(c) => ("rd-gain", c),
            Command::BosonSteady(c) => ("boson-steady", c),
            Command::BosonOnset(c) => ("boson-onset", c),
            Command::BosonGain(c) => ("boson-gain", c),
            Command::MapBistability(c) => ("map-bistability", c),
            Command::PeakCurves(c) => ("peak-curves", c),
            Command::CompareModels(c) => ("compare-models", c),
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (name, common) = cli.command.split();
    let format: Format = common
        .format
        .parse()
        .map_err(CliError::Model)?;

    let mut cfg = match &common.config {
        Some(path) => Config::from_file(path)?,
        None => Config::empty(),
    };
    cfg.apply_overrides(&common.set)?;

    let jitter = Jitter {
        frac: common.jitter,
        seed: common.seed,
    };

    let work = || -> Result<(), CliError> {
        let (mut table, svg) = commands::run(name, &cfg, jitter)?;
        table.meta.insert(0, ("command".into(), name.into()));
        let y_refs: Vec<&str> = svg.1.iter().map(|s| s.as_str()).collect();
        emit(&table, format, common.out.as_deref(), (&svg.0, &y_refs))
    };

    match common.threads {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Model(format!("thread pool: {e}")))?
            .install(work),
        _ => work(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
