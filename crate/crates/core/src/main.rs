use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qlattice::cli::{self, FiducialSource, SweepConfig};
use qlattice::Tolerance;

/// Subspace-lattice operators, identity sweeps and finite coherent projectors.
#[derive(Parser)]
#[command(name = "qlattice", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the three-line example and compare with the published values.
    Repro,
    /// Run randomized identity checks.
    Sweep {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Cumulative coherent projectors for odd d.
    Coherent {
        #[arg(long)]
        d: usize,
        /// Path to a JSON vector `[[re, im], ...]`, or `generic`.
        #[arg(long, default_value = "generic")]
        fiducial: String,
        /// Labels as `a1,b1;a2,b2;...`.
        #[arg(long)]
        labels: String,
        /// Displacement `k,l` for the covariance check.
        #[arg(long)]
        shift: Option<String>,
    },
    /// Möbius operator of two or more subspace files.
    Mobius {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long)]
        dual: bool,
        /// Density matrix for moments and classification.
        #[arg(long)]
        rho: Option<PathBuf>,
    },
}

fn run(args: Args) -> qlattice::Result<cli::CommandOutput> {
    let tol = Tolerance::from_env()?;
    match args.command {
        Command::Repro => cli::cmd_repro(&tol),
        Command::Sweep { d, trials, seed, check } => cli::cmd_sweep(&SweepConfig::new(d, trials, seed, &check, tol)?),
        Command::Coherent {
            d,
            fiducial,
            labels,
            shift,
        } => {
            let labels = cli::parse_labels(&labels)?;
            let shift = shift.as_deref().map(cli::parse_pair).transpose()?;
            cli::cmd_coherent(d, FiducialSource::from_arg(&fiducial), &labels, shift, &tol)
        }
        Command::Mobius { files, dual, rho } => {
            let files: Vec<&std::path::Path> = files.iter().map(PathBuf::as_path).collect();
            cli::cmd_mobius(&files, dual, rho.as_deref(), &tol)
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
