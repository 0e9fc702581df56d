// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phonon_pump::cli::{self, CommandOutput, RunConfig};
use phonon_pump::Error;

#[derive(Parser)]
#[command(name = "phonon-pump", version, about = "Phonon counting for a driven exciton heat pump")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phonon-number distributions p_m at selected times
    Distribution(CommonArgs),
    /// Steady-state flux and energy rate against detuning
    SweepDetuning(CommonArgs),
    /// Steady-state flux against radiative decay rate
    SweepGamma(CommonArgs),
    /// Trajectory dump: moments of p_m, reduced density matrix, flux
    Evolve(CommonArgs),
    /// Heat-transfer rate and temperature slope at one working point
    CoolingEstimate(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON run configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination (default: config `output`, else stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override a config key, e.g. `--override delta=0.5` or `--override sweep.axis=delta`
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn load(args: &CommonArgs) -> Result<RunConfig, Error> {
    let text = match &args.config {
        Some(path) => Some(fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read {}: {e}", path.display()))
        })?),
        None => None,
    };
    RunConfig::load(text.as_deref(), &args.overrides)
}

type Scenario = fn(&RunConfig) -> Result<CommandOutput, Error>;

fn run(command: &Command) -> Result<(), Error> {
    let (args, f): (&CommonArgs, Scenario) = match command {
        Command::Distribution(a) => (a, cli::cmd_distribution),
        Command::SweepDetuning(a) => (a, cli::cmd_sweep_detuning),
        Command::SweepGamma(a) => (a, cli::cmd_sweep_gamma),
        Command::Evolve(a) => (a, cli::cmd_evolve),
        Command::CoolingEstimate(a) => (a, cli::cmd_cooling_estimate),
    };
    let config = load(args)?;
    let output = f(&config)?;
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    let out_path = args.out.clone().or_else(|| config.output.as_ref().map(PathBuf::from));
    if let Some(report) = &output.report {
        print!("{report}");
        // the report owns stdout; CSV only goes to an explicit destination
        if let Some(path) = out_path {
            output.table.write_to(fs::File::create(path)?)?;
        }
        return Ok(());
    }
    match out_path {
        Some(path) => output.table.write_to(fs::File::create(path)?)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            output.table.write_to(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
