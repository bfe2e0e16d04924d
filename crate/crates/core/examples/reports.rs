//! The reproduction report for the three-line configuration and a small
//! deterministic property sweep.

use qlattice::cli::{cmd_repro, cmd_sweep, SweepConfig};
use qlattice::{Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let repro = cmd_repro(&tol)?;
    println!("{}", repro.text);

    let config = SweepConfig::new(4, 20, 42, "all", tol)?;
    let sweep = cmd_sweep(&config)?;
    println!("{}", sweep.text);
    Ok(())
}
