//! The three-line configuration in `C^3` and the uniform-superposition state
//! used by the reference reproduction.
//!
//! `v1` and `v2` are normalized before use; `v3` is computed as the unit
//! vector along `v1 + v2`, so it lies exactly in their plane.

use crate::lattice::Subspace;
use crate::numerics::{ComplexMatrix, Tolerance};

pub const V1: [f64; 3] = [0.3, 0.3, 0.905];
pub const V2: [f64; 3] = [0.4, 0.5, 0.768];

fn normalized(v: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

/// Unit vectors `(v1, v2, v3)`.
pub fn three_vectors() -> [[f64; 3]; 3] {
    let v1 = normalized(V1);
    let v2 = normalized(V2);
    let v3 = normalized([v1[0] + v2[0], v1[1] + v2[1], v1[2] + v2[2]]);
    [v1, v2, v3]
}

/// Lines `H1, H2, H3` spanned by [`three_vectors`].
pub fn three_lines(tol: &Tolerance) -> [Subspace; 3] {
    three_vectors().map(|v| Subspace::line(&v, tol))
}

/// `rho = J / 3` with `J` the all-ones matrix: the pure state `(1,1,1)/sqrt 3`.
pub fn uniform_density() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0; 3], &[1.0; 3], &[1.0; 3]]).scale(1.0 / 3.0)
}
