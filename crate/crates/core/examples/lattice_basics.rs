//! Joins, meets, complements and the failure of distributivity on three
//! coplanar lines in `C^3`.

use qlattice::fixtures::three_lines;
use qlattice::lattice::{commutes, join, leq, meet, orthocomplement};
use qlattice::{Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let [h1, h2, h3] = three_lines(&tol);

    let j12 = join(&h1, &h2, &tol)?;
    let m12 = meet(&h1, &h2, &tol)?;
    println!("dim H1 v H2 = {}, dim H1 ^ H2 = {}", j12.rank(), m12.rank());
    println!("H3 <= H1 v H2: {}", leq(&h3, &j12, &tol)?);
    println!("H1 and H2 commute: {}", commutes(&h1, &h2, &tol)?);

    // H3 ^ (H1 v H2) = H3, but (H3 ^ H1) v (H3 ^ H2) = 0
    let lhs = meet(&h3, &j12, &tol)?;
    let rhs = join(&meet(&h3, &h1, &tol)?, &meet(&h3, &h2, &tol)?, &tol)?;
    println!(
        "H3 ^ (H1 v H2) has dim {}, (H3 ^ H1) v (H3 ^ H2) has dim {}",
        lhs.rank(),
        rhs.rank()
    );

    let c1 = orthocomplement(&h1, &tol);
    println!(
        "dim H1' = {}, H1 ^ H1' = 0: {}",
        c1.rank(),
        meet(&h1, &c1, &tol)?.is_zero()
    );
    println!("H1 as JSON: {}", h1.to_json());
    Ok(())
}
