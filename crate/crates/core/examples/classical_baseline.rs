//! The additive classical case: Möbius functions of a probability measure vanish,
//! and mass functions give belief below plausibility.

use std::collections::BTreeMap;

use qlattice::classical::{mobius_delta, total_probability_residual, FiniteMeasure, MassFunction};
use qlattice::rng::TrialRng;
use qlattice::Result;

fn main() -> Result<()> {
    let mut rng = TrialRng::new(11);
    let measure = FiniteMeasure::random(&mut rng, 6);
    let sets = [0b000111, 0b011100, 0b110001];
    let (delta, dual) = mobius_delta(&measure, &sets)?;
    println!("delta = {delta:.2e}, dual delta = {dual:.2e}");
    println!(
        "total probability residual {:.2e}",
        total_probability_residual(&measure, 0b001011, &[0b000011, 0b001100, 0b110000])?
    );
    println!("{}", measure.to_json());

    let masses = BTreeMap::from([(0b001, 0.5), (0b011, 0.3), (0b111, 0.2)]);
    let m = MassFunction::new(3, masses)?;
    for a in [0b001u32, 0b010, 0b011] {
        let (bel, pl) = m.belief_plausibility(a);
        println!("A = {a:03b}: belief {bel:.2}, plausibility {pl:.2}");
    }
    println!("{}", m.to_json());
    Ok(())
}
