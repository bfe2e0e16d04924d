//! Moments of Möbius operators in a state, and the sign-based classification
//! into lower, upper and additive cases.

use qlattice::fixtures::{three_lines, uniform_density};
use qlattice::mobius::mobius_pair;
use qlattice::observables::{check_moment_relations, ds_classify, DensityMatrix, MomentReport};
use qlattice::rng::TrialRng;
use qlattice::{Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let [h1, h2, _] = three_lines(&tol);
    let rho = DensityMatrix::new(uniform_density(), &tol)?;

    let d12 = mobius_pair(&h1, &h2, &tol)?;
    let report = MomentReport::compute("D(H1,H2)", &rho, &d12)?;
    println!("{}", report.to_json());
    println!("classification: {}", ds_classify(&rho, &h1, &h2, &tol)?);

    let mut rng = TrialRng::new(7);
    for _ in 0..3 {
        let rho = DensityMatrix::random(&mut rng, 3);
        let r = check_moment_relations(&rho, &h1, &h2, &tol)?;
        println!(
            "random state: {} (moment residuals {:.1e}, {:.1e})",
            ds_classify(&rho, &h1, &h2, &tol)?,
            r.mean,
            r.variance
        );
    }
    Ok(())
}
