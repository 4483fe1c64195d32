use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use boxproj::harness::{run_command, write_atomic, ExperimentConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    /// Direction-set combinatorics: ϱ_V, Λ, α_U and the C(β,U) table
    Analyze,
    /// L_β on a grid by closed form and by lattice series
    Lbeta,
    /// Coefficients and error norm of P_h f at one scale
    Project,
    /// Right-side constant of the asymptotic error formula
    Constant,
    /// Convergence sweep over a ladder of scales
    Converge,
    /// Run every invariant and oracle
    Check,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Lbeta => "lbeta",
            Command::Project => "project",
            Command::Constant => "constant",
            Command::Converge => "converge",
            Command::Check => "check",
        }
    }
}

/// Box-spline L² projections and their asymptotic error.
#[derive(Debug, Parser)]
#[command(name = "boxproj", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// TOML experiment configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => match ExperimentConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => ExperimentConfig::default(),
    };
    let output = match run_command(cli.command.name(), &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out_path = cli.out.clone().or_else(|| cfg.out.as_ref().map(PathBuf::from));
    match out_path {
        Some(path) => {
            if let Err(e) = write_atomic(&path, &output.body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            print!("{}", output.summary_text());
        }
        None => {
            print!("{}", output.body);
            eprint!("{}", output.summary_text());
        }
    }
    if output.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
