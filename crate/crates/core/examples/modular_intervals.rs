//! Transpose chains of intervals in a modular lattice and the constraints they
//! put on Möbius operators.

use qlattice::modular::{
    check_p2_decomposition, check_p3_projective, random_chain_sample, random_projective_sample, spectral_check_p1,
    transpose_chain, transpose_down, transpose_up,
};
use qlattice::rng::TrialRng;
use qlattice::{Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let mut rng = TrialRng::new(9);
    let d = 5;

    let s = random_chain_sample(&mut rng, d, &tol);
    let chain = transpose_chain(&s.h1, &s.h2, &s.h, &tol)?;
    for (k, iv) in chain.iter().enumerate() {
        println!("interval {k}: dims [{}, {}]", iv.lower().rank(), iv.upper().rank());
    }
    let up = transpose_up(&s.h, &s.h1, &s.h2, &tol)?;
    let back = transpose_down(&up, &s.h1, &s.h2, &tol)?;
    println!("round trip distance {:.3e}", back.distance(&s.h));

    let p2 = check_p2_decomposition(&s.h1, &s.h2, &s.h, &tol)?;
    println!(
        "chain decomposition residuals: direct {:.3e}, chain {:.3e}",
        p2.direct, p2.chain
    );

    let p = random_projective_sample(&mut rng, d, &tol);
    let p3 = check_p3_projective(&p.h1p, &p.h2, &p.h3p, Some(&p.h), &tol)?;
    println!("projective residual {:.3e}", p3.max());

    let spectrum = spectral_check_p1(&s.h1, &s.h2, &tol)?;
    println!(
        "spectrum of D(H1, H2): sum {:.1e}, {} zero eigenvalues (need {}), pass {}",
        spectrum.eigenvalue_sum, spectrum.zero_count, spectrum.required_zeros, spectrum.pass
    );
    Ok(())
}
