//! The lattice of subspaces of `C^d`.
//!
//! A [`Subspace`] carries an orthonormal basis and its projector. Two
//! subspaces are equal when their projectors agree, never by basis
//! comparison. Meets come from the eigenvalue-2 eigenspace of `P1 + P2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{kernel, orthonormal_range, ComplexMatrix, Tolerance, C64};
use crate::rng::{gaussian_matrix, TrialRng};

/// Orthogonal projector together with the subspace rank it projects onto.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: ComplexMatrix,
    rank: usize,
}

impl Projector {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Largest of `|P^2 - P|_F`, `|P - P^H|_F` and `|Tr P - rank|`.
    pub fn defect(&self) -> f64 {
        let m = &self.matrix;
        let idem = m.matmul(m).distance(m);
        let herm = m.hermiticity_residual();
        let tr = (m.trace() - C64::new(self.rank as f64, 0.0)).norm();
        idem.max(herm).max(tr)
    }
}

#[derive(Debug, Clone)]
pub struct Subspace {
    basis: ComplexMatrix,
    projector: Projector,
}

impl Subspace {
    /// Wraps a basis that is already orthonormal. Callers inside the crate
    /// guarantee this; use [`Subspace::span`] for arbitrary vectors.
    fn from_orthonormal(basis: ComplexMatrix) -> Self {
        let matrix = basis.matmul(&basis.adjoint());
        let rank = basis.cols();
        Subspace {
            basis,
            projector: Projector { matrix, rank },
        }
    }

    /// Span of the columns of `vectors` (d rows, any number of columns).
    pub fn span(vectors: &ComplexMatrix, tol: &Tolerance) -> Self {
        Self::from_orthonormal(orthonormal_range(vectors, tol))
    }

    /// Span of a list of vectors in `C^d`.
    pub fn from_vectors(d: usize, vectors: &[Vec<C64>], tol: &Tolerance) -> Result<Self> {
        let m = ComplexMatrix::from_columns(d, vectors)?;
        m.check_finite()?;
        Ok(Self::span(&m, tol))
    }

    /// Line spanned by a single real vector.
    pub fn line(v: &[f64], tol: &Tolerance) -> Self {
        let cols = vec![v.iter().map(|x| C64::new(*x, 0.0)).collect::<Vec<_>>()];
        Self::from_vectors(v.len(), &cols, tol).expect("single column has matching length")
    }

    /// The zero subspace.
    pub fn zero(d: usize) -> Self {
        Self::from_orthonormal(ComplexMatrix::zeros(d, 0))
    }

    /// The whole space `C^d`.
    pub fn full(d: usize) -> Self {
        Self::from_orthonormal(ComplexMatrix::identity(d))
    }

    /// Span of the listed coordinate axes.
    pub fn coordinate(d: usize, axes: &[usize]) -> Self {
        let basis = ComplexMatrix::from_fn(d, axes.len(), |i, j| {
            if axes[j] == i {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::span(&basis, &Tolerance::default())
    }

    /// Unitarily invariant random subspace of dimension `rank`.
    pub fn random(rng: &mut TrialRng, d: usize, rank: usize, tol: &Tolerance) -> Self {
        Self::span(&gaussian_matrix(rng, d, rank), tol)
    }

    /// Random subspace of dimension `rank` inside `self`.
    pub fn random_within(&self, rng: &mut TrialRng, rank: usize, tol: &Tolerance) -> Self {
        let coeffs = gaussian_matrix(rng, self.rank(), rank);
        Self::span(&self.basis.matmul(&coeffs), tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector.matrix
    }

    pub fn as_projector(&self) -> &Projector {
        &self.projector
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// `|P(self) - P(other)|_F`.
    pub fn distance(&self, other: &Subspace) -> f64 {
        self.projector().distance(other.projector())
    }

    /// Equality as subspaces: mutual containment.
    pub fn same_as(&self, other: &Subspace, tol: &Tolerance) -> Result<bool> {
        Ok(leq(self, other, tol)? && leq(other, self, tol)?)
    }

    pub fn to_file(&self) -> SubspaceFile {
        SubspaceFile {
            d: self.ambient_dim(),
            vectors: self
                .basis
                .columns()
                .into_iter()
                .map(|c| c.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

/// JSON form of a subspace: `{"d": n, "vectors": [[[re, im], ...], ...]}`.
/// The vectors only need to span the subspace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub d: usize,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

impl SubspaceFile {
    pub fn into_subspace(self, tol: &Tolerance) -> Result<Subspace> {
        if self.d == 0 {
            return Err(Error::parse("subspace", "field `d` must be at least 1"));
        }
        let mut cols = Vec::with_capacity(self.vectors.len());
        for (k, v) in self.vectors.iter().enumerate() {
            if v.len() != self.d {
                return Err(Error::parse(
                    "subspace",
                    format!("vectors[{k}] has {} components, expected d = {}", v.len(), self.d),
                ));
            }
            cols.push(v.iter().map(|[re, im]| C64::new(*re, *im)).collect());
        }
        Subspace::from_vectors(self.d, &cols, tol)
    }
}

impl Subspace {
    pub fn from_json(s: &str, tol: &Tolerance) -> Result<Self> {
        let file: SubspaceFile = serde_json::from_str(s).map_err(|e| Error::parse("subspace JSON", e))?;
        file.into_subspace(tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("subspace serialization is infallible")
    }
}

fn same_dim(a: &Subspace, b: &Subspace) -> Result<usize> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(a.ambient_dim())
}

/// `H1 v H2 = span(H1 u H2)`.
pub fn join(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    same_dim(h1, h2)?;
    Ok(Subspace::span(&h1.basis.hstack(&h2.basis)?, tol))
}

/// `H1 ^ H2 = H1 n H2`, the kernel of `P1 + P2 - 2I`.
pub fn meet(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    let d = same_dim(h1, h2)?;
    if h1.is_zero() || h2.is_zero() {
        return Ok(Subspace::zero(d));
    }
    let m = &(h1.projector() + h2.projector()) - &ComplexMatrix::identity(d).scale(2.0);
    Ok(Subspace::from_orthonormal(kernel(&m, tol)?))
}

pub fn orthocomplement(h: &Subspace, tol: &Tolerance) -> Subspace {
    let d = h.ambient_dim();
    let complement = &ComplexMatrix::identity(d) - h.projector();
    Subspace::span(&complement, tol)
}

/// Subspace order: `H1 <= H2` iff `P2 P1 = P1`.
pub fn leq(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<bool> {
    same_dim(h1, h2)?;
    let p1 = h1.projector();
    Ok(h2.projector().matmul(p1).distance(p1) <= tol.identity_eps)
}

/// Commutation test, evaluated two ways: the projector commutator and the
/// lattice form `H1 = (H1 ^ H2) v (H1 ^ H2')`. Disagreement is an error.
pub fn commutes(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<bool> {
    same_dim(h1, h2)?;
    let by_commutator = h1.projector().commutator(h2.projector()).frobenius_norm() <= tol.identity_eps;
    let h2_perp = orthocomplement(h2, tol);
    let rebuilt = join(&meet(h1, h2, tol)?, &meet(h1, &h2_perp, tol)?, tol)?;
    let by_lattice = rebuilt.distance(h1) <= tol.identity_eps;
    if by_commutator != by_lattice {
        return Err(Error::InternalInconsistency(format!(
            "commutator test says {by_commutator}, lattice decomposition says {by_lattice}"
        )));
    }
    Ok(by_commutator)
}

/// Join of any number of subspaces; the zero subspace for an empty list.
pub fn join_all(d: usize, subspaces: &[&Subspace], tol: &Tolerance) -> Result<Subspace> {
    subspaces
        .iter()
        .try_fold(Subspace::zero(d), |acc, h| join(&acc, h, tol))
}

/// Meet of any number of subspaces; the whole space for an empty list.
pub fn meet_all(d: usize, subspaces: &[&Subspace], tol: &Tolerance) -> Result<Subspace> {
    subspaces
        .iter()
        .try_fold(Subspace::full(d), |acc, h| meet(&acc, h, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::three_lines;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn join_with_zero_is_identity() {
        let mut rng = TrialRng::new(1);
        let h = Subspace::random(&mut rng, 4, 2, &tol());
        let j = join(&h, &Subspace::zero(4), &tol()).unwrap();
        assert!(j.distance(&h) < 1e-12);
    }

    #[test]
    fn join_of_axes_is_everything() {
        let axes: Vec<Subspace> = (0..3).map(|i| Subspace::coordinate(3, &[i])).collect();
        let refs: Vec<&Subspace> = axes.iter().collect();
        let all = join_all(3, &refs, &tol()).unwrap();
        assert_eq!(all.rank(), 3);
        assert!(all.distance(&Subspace::full(3)) < 1e-12);
    }

    #[test]
    fn example_lines_join_and_meet() {
        let [h1, h2, h3] = three_lines(&tol());
        let j12 = join(&h1, &h2, &tol()).unwrap();
        assert_eq!(j12.rank(), 2);
        for (a, b) in [(&h1, &h2), (&h2, &h3), (&h1, &h3)] {
            assert!(meet(a, b, &tol()).unwrap().is_zero());
        }
        assert!(leq(&h1, &j12, &tol()).unwrap());
        assert!(!leq(&h1, &h2, &tol()).unwrap());
        // v3 lies in the plane of v1, v2.
        let j13 = join(&h1, &h3, &tol()).unwrap();
        let j23 = join(&h2, &h3, &tol()).unwrap();
        assert!(j13.distance(&j23) < 1e-12);
        assert!(!commutes(&h1, &h2, &tol()).unwrap());
    }

    #[test]
    fn meet_is_idempotent() {
        let mut rng = TrialRng::new(2);
        let h = Subspace::random(&mut rng, 5, 3, &tol());
        assert!(meet(&h, &h, &tol()).unwrap().distance(&h) < 1e-10);
    }

    #[test]
    fn two_planes_in_three_dimensions_meet_in_a_line() {
        for trial in 0..10 {
            let mut rng = TrialRng::stream(3, trial);
            let a = Subspace::random(&mut rng, 3, 2, &tol());
            let b = Subspace::random(&mut rng, 3, 2, &tol());
            let m = meet(&a, &b, &tol()).unwrap();
            let j = join(&a, &b, &tol()).unwrap();
            // dim(a ^ b) = dim a + dim b - dim(a v b)
            assert_eq!(m.rank(), a.rank() + b.rank() - j.rank());
            assert_eq!(m.rank(), 1);
            assert!(leq(&m, &a, &tol()).unwrap() && leq(&m, &b, &tol()).unwrap());
        }
    }

    #[test]
    fn orthocomplement_examples() {
        let zero_perp = orthocomplement(&Subspace::zero(3), &tol());
        assert!(zero_perp.distance(&Subspace::full(3)) < 1e-12);

        let x = Subspace::coordinate(3, &[0]);
        let yz = orthocomplement(&x, &tol());
        assert!(yz.distance(&Subspace::coordinate(3, &[1, 2])) < 1e-12);

        let mut rng = TrialRng::new(4);
        let h = Subspace::random(&mut rng, 4, 2, &tol());
        let hp = orthocomplement(&h, &tol());
        assert!(meet(&h, &hp, &tol()).unwrap().is_zero());
        assert!(join(&h, &hp, &tol()).unwrap().distance(&Subspace::full(4)) < 1e-10);
        assert!(orthocomplement(&hp, &tol()).distance(&h) < 1e-10);
    }

    #[test]
    fn commutes_examples() {
        let mut rng = TrialRng::new(5);
        let h = Subspace::random(&mut rng, 4, 2, &tol());
        assert!(commutes(&h, &orthocomplement(&h, &tol()), &tol()).unwrap());
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::coordinate(3, &[1, 2]);
        assert!(commutes(&a, &b, &tol()).unwrap());
    }

    #[test]
    fn zero_is_below_everything() {
        let mut rng = TrialRng::new(6);
        let h = Subspace::random(&mut rng, 3, 1, &tol());
        assert!(leq(&Subspace::zero(3), &h, &tol()).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(join(&a, &b, &tol()), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(meet(&a, &b, &tol()), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(leq(&a, &b, &tol()), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(commutes(&a, &b, &tol()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_loader_orthonormalizes() {
        let s = r#"{"d": 3, "vectors": [[[1,0],[1,0],[0,0]], [[2,0],[2,0],[0,0]], [[0,0],[0,0],[3,0]]]}"#;
        let h = Subspace::from_json(s, &tol()).unwrap();
        assert_eq!(h.rank(), 2);
        assert!(h.as_projector().defect() < 1e-12);
        let back = Subspace::from_json(&h.to_json(), &tol()).unwrap();
        assert!(back.distance(&h) < 1e-12);
        assert!(Subspace::from_json(r#"{"d": 2, "vectors": [[[1,0]]]}"#, &tol()).is_err());
    }
}
