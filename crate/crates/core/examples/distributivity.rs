//! Non-distributivity projectors and the total-probability deviation for the
//! three-line configuration.

use qlattice::distributivity::{check_pi_decomposition, check_varpi_mobius_links, pi_deviation, varpi1, varpi2};
use qlattice::fixtures::three_lines;
use qlattice::{Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let [h1, h2, h3] = three_lines(&tol);

    let w1 = varpi1(&h1, &h2, &h3, &tol)?;
    let w2 = varpi2(&h1, &h2, &h3, &tol)?;
    let pi = pi_deviation(&h3, &h1, &tol)?;
    for p in [&w1, &w2, &pi] {
        println!(
            "{}: trace {:.3}, idempotence residual {:.3e}\n{:?}",
            p.kind.label(),
            p.matrix.trace().re,
            p.idempotence_residual(),
            p.matrix
        );
    }
    println!("|varpi2 - pi|_F = {:.3e}", w2.matrix.distance(&pi.matrix));

    let links = check_varpi_mobius_links(&h1, &h2, &h3, &tol)?;
    for c in links.checks(tol.identity_eps) {
        println!("{:<32} {:.3e}", c.name, c.residual);
    }
    println!(
        "pi decomposition residual {:.3e}",
        check_pi_decomposition(&h3, &h1, &tol)?
    );
    Ok(())
}
