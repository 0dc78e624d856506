use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crossdiff_cli::commands::{
    cmd_analyze, cmd_factorize, cmd_simulate, AnalyzeArgs, FactorizeArgs, SimulateArgs,
};

/// Entropy-structure analysis for cross-diffusion systems.
#[derive(Parser)]
#[command(name = "crossdiff", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a model admits an entropy structure and write a JSON report.
    Analyze(AnalyzeArgs),
    /// Factor a constant matrix as A₁·A₂ with symmetric positive definite A₁.
    Factorize(FactorizeArgs),
    /// Run the 1D no-flux solver and track discrete entropy decay.
    Simulate(SimulateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Factorize(args) => cmd_factorize(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
