//! Projectors onto spans of finite coherent states in odd dimension, their
//! covariance under displacements and the resolutions of the identity.

use qlattice::coherent::{
    check_displacement_covariance, check_resolutions, default_labels, mixed_coherent_state, von_neumann_entropy,
    CoherentAggregate, CoherentFamily,
};
use qlattice::numerics::ComplexMatrix;
use qlattice::{Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::default();
    let family = CoherentFamily::generic(5)?;
    println!(
        "d = {}, overlap <(0,0)|(1,2)> = {:.4}",
        family.dim(),
        family.overlap((0, 0), (1, 2))
    );

    for i in 2..=family.dim() {
        let labels = default_labels(family.dim(), i);
        let agg = CoherentAggregate::from_labels(&family, &labels, &tol)?;
        let cov = check_displacement_covariance(&agg, (2, 3), &tol)?;
        let res = check_resolutions(&family, &labels, &ComplexMatrix::identity(family.dim()), &tol)?;
        let rho = mixed_coherent_state(&agg, &tol)?;
        println!(
            "i = {i}: rank {:.0}, covariance {:.1e}, resolution (1/d) {:.1e}, (1/i) {:.1e}, entropy {:.4}",
            agg.projector().trace().re,
            cov.max(),
            res.increments,
            res.increments_over_count,
            von_neumann_entropy(&rho)?
        );
    }
    Ok(())
}
