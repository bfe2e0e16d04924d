//! Möbius operators of two and three lines, their spectra and the identities
//! tying them to commutators.

use qlattice::fixtures::three_lines;
use qlattice::mobius::{check_commutator_identity_2, check_triple_identities, mobius, mobius_dual, mobius_pair};
use qlattice::numerics::hermitian_eig;
use qlattice::{Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let [h1, h2, h3] = three_lines(&tol);

    let d12 = mobius_pair(&h1, &h2, &tol)?;
    println!("D(H1, H2) =\n{d12:?}");
    println!("eigenvalues {:?}", hermitian_eig(&d12)?.eigenvalues);
    println!(
        "[P1, P2] = D (P1 - P2): residual {:.3e}",
        check_commutator_identity_2(&h1, &h2, &tol)?
    );

    let args = [h1.clone(), h2.clone(), h3.clone()];
    let d = mobius(&args, &tol)?;
    let dual = mobius_dual(&args, &tol)?;
    println!(
        "Tr D(H1, H2, H3) = {:.6}, Tr D~(H1, H2, H3) = {:.6}",
        d.trace(),
        dual.trace()
    );

    let residuals = check_triple_identities(&h1, &h2, &h3, &tol)?;
    for c in residuals.checks(tol.identity_eps) {
        println!("{:<28} {:.3e}", c.name, c.residual);
    }
    Ok(())
}
