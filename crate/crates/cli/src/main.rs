use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use fastrip_core::experiment::{exit_code, run, ExperimentConfig, Subcommand};
use fastrip_core::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    /// Build the operator and report its structure and cost.
    Build,
    /// Estimate the restricted isometry constant.
    Rip,
    /// Sample the distribution of the chain norm over sign draws.
    Chaos,
    /// Sparse recovery success rates with IHT and OMP.
    Recover,
    /// Operation counts and timings across sizes.
    Bench,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::Build => Subcommand::Build,
            Command::Rip => Subcommand::Rip,
            Command::Chaos => Subcommand::Chaos,
            Command::Recover => Subcommand::Recover,
            Command::Bench => Subcommand::Bench,
        }
    }
}

/// Fast structured random matrices with the restricted isometry property.
#[derive(Debug, Parser)]
#[command(name = "fastrip", version)]
struct Cli {
    command: Command,
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config trial count.
    #[arg(long)]
    trials: Option<u64>,
    /// Suppress the summary and warnings.
    #[arg(long)]
    quiet: bool,
    /// Add wall-clock columns (makes output machine-dependent).
    #[arg(long)]
    timing: bool,
}

fn load(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.chain.seed = seed;
    }
    if let Some(trials) = cli.trials {
        cfg.trials = trials;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.display().to_string());
    }
    cfg.timing |= cli.timing;
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<(), Error> {
    let cfg = load(cli)?;
    let output = run(&cfg, cli.command.into())?;
    if !cli.quiet {
        for w in &output.warnings {
            eprintln!("warning: {w}");
        }
    }
    match &cfg.out {
        Some(path) => {
            fs::write(path, &output.csv).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            if !cli.quiet {
                print!("{}", output.summary);
                println!("wrote {path}");
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(output.csv.as_bytes())?;
            if !cli.quiet {
                eprint!("{}", output.summary);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
