use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fcell_core::ModelTag;
use fcell_pipeline::ops::{dataset_file, model_file, OBJECTIVES};
use fcell_pipeline::{
    fit, load_config, optimize, paper_opt, polarize, run_pipeline, sweep, train, FitInput,
    ObjectiveSource, PipelineError, RunConfig,
};
use fcell_surrogate::{Objective, PaperModel};

/// Surrogate-assisted design optimization for PEM fuel cell channels.
#[derive(Debug, Parser)]
#[command(name = "polycell", version)]
struct Cli {
    /// TOML run configuration; every key is optional.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every stochastic component.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cell preset: cubic, pentagonal or hexagonal.
    #[arg(long, global = true)]
    preset: Option<ModelTag>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FitFrom {
    Dataset,
    Model,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate production and consumption power over the design grid.
    Sweep,
    /// Train the neural surrogate (both objectives unless --objective is given).
    Train {
        #[arg(long)]
        objective: Option<Objective>,
        /// Dataset CSV; defaults to the sweep output. Requires --objective.
        #[arg(long, requires = "objective")]
        dataset: Option<PathBuf>,
    },
    /// Fit quadratic response surfaces.
    Fit {
        #[arg(long)]
        objective: Option<Objective>,
        #[arg(long, value_enum, default_value = "model")]
        from: FitFrom,
        /// Input file; defaults to this directory's model or sweep file. Requires --objective.
        #[arg(long, requires = "objective")]
        input: Option<PathBuf>,
    },
    /// Run NSGA-II on the configured objective source.
    Optimize {
        /// paper, physics, surrogate or fitted.
        #[arg(long)]
        source: Option<ObjectiveSource>,
    },
    /// Optimize the published surfaces of a channel model.
    PaperOpt { model: PaperModel },
    /// Polarization curve of the preset.
    Polarize {
        /// Comma-separated cell voltages in V.
        #[arg(long, value_delimiter = ',')]
        voltages: Option<Vec<f64>>,
    },
    /// sweep, train, fit and optimize on the fitted surfaces.
    Pipeline,
}

fn configure(cli: &Cli) -> Result<RunConfig, PipelineError> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    if let Some(preset) = cli.preset {
        config.preset = preset;
    }
    config.validate()?;
    Ok(config)
}

fn targets(objective: Option<Objective>) -> Vec<Objective> {
    objective.map_or(OBJECTIVES.to_vec(), |o| vec![o])
}

fn execute(cli: Cli) -> Result<String, PipelineError> {
    let config = configure(&cli)?;
    let mut out = String::new();
    // Writing into a `String` cannot fail.
    macro_rules! say {
        ($($arg:tt)*) => { let _ = writeln!(out, $($arg)*); };
    }
    match cli.command {
        Command::Sweep => {
            let s = sweep(&config)?;
            say!(
                "sweep: {} rows ({} skipped) -> {}",
                s.production.len(),
                s.skipped.len(),
                config.output_dir.display()
            );
        }
        Command::Train { objective, dataset } => {
            for o in targets(objective) {
                let r = train(&config, o, dataset.clone())?;
                say!(
                    "train {o}: rmse {:.6e} W ({:.3} % of range) -> {}",
                    r.rmse,
                    100.0 * r.relative_rmse,
                    r.model_path.display()
                );
            }
        }
        Command::Fit {
            objective,
            from,
            input,
        } => {
            for o in targets(objective) {
                let source = match (from, input.clone()) {
                    (FitFrom::Dataset, path) => FitInput::Dataset(
                        path.unwrap_or_else(|| config.output_dir.join(dataset_file(o))),
                    ),
                    (FitFrom::Model, path) => FitInput::Model(
                        path.unwrap_or_else(|| config.output_dir.join(model_file(o))),
                    ),
                };
                let r = fit(&config, o, source)?;
                say!("fit {o}: {} -> {}", r.surface, r.surface_path.display());
            }
        }
        Command::Optimize { source } => {
            let config = RunConfig {
                source: source.unwrap_or(config.source),
                ..config
            };
            let r = optimize(&config)?;
            out.push_str(&r.render());
            say!("front -> {}", r.front_path.display());
        }
        Command::PaperOpt { model } => {
            let r = paper_opt(&config, model)?;
            out.push_str(&r.render());
            say!("front -> {}", r.front_path.display());
        }
        Command::Polarize { voltages } => {
            let r = polarize(&config, voltages.as_deref())?;
            say!(
                "polarize: {} points ({} failed), E_rev = {:.6} V -> {}",
                r.points.len(),
                r.failures.len(),
                r.reversible_voltage,
                r.path.display()
            );
        }
        Command::Pipeline => {
            let r = run_pipeline(&config)?;
            out.push_str(&r.render());
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(report.as_bytes())
                .and_then(|()| stdout.flush())
            {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("error: writing to stdout: {e}");
                    ExitCode::from(4)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
