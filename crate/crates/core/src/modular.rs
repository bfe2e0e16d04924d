//! Interval sublattices, the transpose-interval order and the constraints
//! modularity of the subspace lattice puts on Möbius operators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{join, leq, meet, Subspace};
use crate::mobius::{mobius_pair, MobiusOperator};
use crate::numerics::{hermitian_eig, ComplexMatrix, Tolerance};
use crate::rng::{gaussian_matrix, TrialRng};

/// `[lower, upper]`, all subspaces between the two endpoints.
#[derive(Debug, Clone)]
pub struct Interval {
    lower: Subspace,
    upper: Subspace,
}

impl Interval {
    pub fn new(lower: Subspace, upper: Subspace, tol: &Tolerance) -> Result<Self> {
        if !leq(&lower, &upper, tol)? {
            return Err(Error::PreconditionViolated(
                "interval lower endpoint is not contained in the upper endpoint".into(),
            ));
        }
        Ok(Interval { lower, upper })
    }

    pub fn lower(&self) -> &Subspace {
        &self.lower
    }

    pub fn upper(&self) -> &Subspace {
        &self.upper
    }

    pub fn contains(&self, h: &Subspace, tol: &Tolerance) -> Result<bool> {
        Ok(leq(&self.lower, h, tol)? && leq(h, &self.upper, tol)?)
    }

    /// Same endpoints as subspaces.
    pub fn same_as(&self, other: &Interval, tol: &Tolerance) -> Result<bool> {
        Ok(self.lower.same_as(&other.lower, tol)? && self.upper.same_as(&other.upper, tol)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransposeRelation {
    LowerTranspose,
    UpperTranspose,
    Projective,
}

/// Two intervals together with the relation that links them. For projective
/// pairs `middle` holds the shared interval's lower endpoint `H2`.
#[derive(Debug, Clone)]
pub struct IntervalPairWitness {
    pub left: Interval,
    pub right: Interval,
    pub relation: TransposeRelation,
    pub middle: Option<Subspace>,
}

impl IntervalPairWitness {
    /// Validates the claimed relation before building the witness.
    pub fn new(
        left: Interval,
        right: Interval,
        relation: TransposeRelation,
        middle: Option<Subspace>,
        tol: &Tolerance,
    ) -> Result<Self> {
        let ok = match (relation, &middle) {
            (TransposeRelation::LowerTranspose, _) => is_lower_transpose(&left, &right, tol)?,
            (TransposeRelation::UpperTranspose, _) => is_lower_transpose(&right, &left, tol)?,
            (TransposeRelation::Projective, Some(h2)) => {
                let peak = join(left.upper(), h2, tol)?;
                let a = Interval::new(h2.clone(), peak.clone(), tol)?;
                is_lower_transpose(&left, &a, tol)? && is_lower_transpose(&right, &a, tol)?
            }
            (TransposeRelation::Projective, None) => {
                return Err(Error::PreconditionViolated(
                    "projective witness needs a middle subspace".into(),
                ))
            }
        };
        if !ok {
            return Err(Error::PreconditionViolated(format!("intervals are not {relation:?}")));
        }
        Ok(IntervalPairWitness {
            left,
            right,
            relation,
            middle,
        })
    }
}

/// `A <_tr B`: `B.upper = A.upper v B.lower` and `A.lower = A.upper ^ B.lower`.
pub fn is_lower_transpose(a: &Interval, b: &Interval, tol: &Tolerance) -> Result<bool> {
    let up = join(a.upper(), b.lower(), tol)?;
    if !up.same_as(b.upper(), tol)? {
        return Ok(false);
    }
    let down = meet(a.upper(), b.lower(), tol)?;
    down.same_as(a.lower(), tol)
}

/// `h -> h v H2`, from `[H1 ^ H2, H1]` onto `[H2, H1 v H2]`.
pub fn transpose_up(h: &Subspace, h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    let source = Interval::new(meet(h1, h2, tol)?, h1.clone(), tol)?;
    if !source.contains(h, tol)? {
        return Err(Error::PreconditionViolated("h is not in [H1 ^ H2, H1]".into()));
    }
    join(h, h2, tol)
}

/// `h' -> h' ^ H1`, the inverse of [`transpose_up`].
pub fn transpose_down(hp: &Subspace, h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    let source = Interval::new(h2.clone(), join(h1, h2, tol)?, tol)?;
    if !source.contains(hp, tol)? {
        return Err(Error::PreconditionViolated("h' is not in [H2, H1 v H2]".into()));
    }
    meet(hp, h1, tol)
}

/// `h -> (h v H2) ^ H3'` between the projective intervals `[H1, H1']` and
/// `[H3, H3']`. Applying it with `H1'` and `H3'` swapped inverts it.
pub fn projective_map(h: &Subspace, h2: &Subspace, target_upper: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    meet(&join(h, h2, tol)?, target_upper, tol)
}

/// The chain `[H1 ^ H2, H2] <_tr [h, h v H2] <_tr [H1, H1 v H2]` attached to
/// `h` in `[H1 ^ H2, H1]`.
pub fn transpose_chain(h1: &Subspace, h2: &Subspace, h: &Subspace, tol: &Tolerance) -> Result<[Interval; 3]> {
    let m = meet(h1, h2, tol)?;
    let hp = transpose_up(h, h1, h2, tol)?;
    Ok([
        Interval::new(m, h2.clone(), tol)?,
        Interval::new(h.clone(), hp, tol)?,
        Interval::new(h1.clone(), join(h1, h2, tol)?, tol)?,
    ])
}

/// Residuals of `H2 ^ h = H1 ^ H2`, `H1 ^ (h v H2) = h`, `H1 v (h v H2) = H1 v H2`.
pub fn chain_membership_residuals(h1: &Subspace, h2: &Subspace, h: &Subspace, tol: &Tolerance) -> Result<[f64; 3]> {
    let m = meet(h1, h2, tol)?;
    let hp = join(h, h2, tol)?;
    Ok([
        meet(h2, h, tol)?.distance(&m),
        meet(h1, &hp, tol)?.distance(h),
        join(h1, &hp, tol)?.distance(&join(h1, h2, tol)?),
    ])
}

fn require_chain(left: &Interval, middle: &Interval, right: &Interval, tol: &Tolerance) -> Result<()> {
    if is_lower_transpose(left, middle, tol)? && is_lower_transpose(middle, right, tol)? {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(
            "intervals do not form a transpose chain".into(),
        ))
    }
}

/// For `[H1, H1'] <_tr [Ha, Ha'] <_tr [H2, H2']`, `|P(Ha) - P((Ha v H1') ^ H2)|_F`.
pub fn check_sandwich_lemma(left: &Interval, middle: &Interval, right: &Interval, tol: &Tolerance) -> Result<f64> {
    require_chain(left, middle, right, tol)?;
    let rebuilt = meet(&join(middle.lower(), left.upper(), tol)?, right.lower(), tol)?;
    Ok(rebuilt.distance(middle.lower()))
}

/// `P([H1, H2]) = P(H2) - P(H1)`.
pub fn proj_map(a: &Interval) -> ComplexMatrix {
    a.upper.projector() - a.lower.projector()
}

/// `P([H2, H1 v H2]) - P([H1 ^ H2, H1])`, which equals `D(H1, H2)`.
pub fn psi_map(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<MobiusOperator> {
    let top = Interval::new(h2.clone(), join(h1, h2, tol)?, tol)?;
    let bottom = Interval::new(meet(h1, h2, tol)?, h1.clone(), tol)?;
    Ok(MobiusOperator {
        matrix: proj_map(&top) - proj_map(&bottom),
        arguments: vec![h1.clone(), h2.clone()],
        dual: false,
    })
}

/// For a chain `[K1, K1'] <_tr [Ka, Ka'] <_tr [K2, K2']`,
/// `|D(K1', Ka) + D(Ka', K2) - D(K1', K2)|_F`.
pub fn check_chain_additivity(left: &Interval, middle: &Interval, right: &Interval, tol: &Tolerance) -> Result<f64> {
    require_chain(left, middle, right, tol)?;
    let lhs = mobius_pair(left.upper(), middle.lower(), tol)? + mobius_pair(middle.upper(), right.lower(), tol)?;
    Ok(lhs.distance(&mobius_pair(left.upper(), right.lower(), tol)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P2Residuals {
    /// `|D(H2, h) + D(h v H2, H1) - D(H2, H1)|_F`.
    pub direct: f64,
    /// Chain additivity on `[H1 ^ H2, H2] <_tr [h, h v H2] <_tr [H1, H1 v H2]`.
    pub chain: f64,
}

impl P2Residuals {
    pub fn max(&self) -> f64 {
        self.direct.max(self.chain)
    }
}

pub fn check_p2_decomposition(h1: &Subspace, h2: &Subspace, h: &Subspace, tol: &Tolerance) -> Result<P2Residuals> {
    let hp = transpose_up(h, h1, h2, tol)?;
    let lhs = mobius_pair(h2, h, tol)? + mobius_pair(&hp, h1, tol)?;
    let direct = lhs.distance(&mobius_pair(h2, h1, tol)?);
    let [left, middle, right] = transpose_chain(h1, h2, h, tol)?;
    let chain = check_chain_additivity(&left, &middle, &right, tol)?;
    Ok(P2Residuals { direct, chain })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P3Residuals {
    /// `|P([H3, H3']) - P([H1, H1']) - D(H1', H2) + D(H2, H3')|_F`.
    pub endpoints: f64,
    /// The same with `H1'` replaced by `h` and `H3'` by its image `h'`.
    pub interior: Option<f64>,
}

impl P3Residuals {
    pub fn max(&self) -> f64 {
        self.endpoints.max(self.interior.unwrap_or(0.0))
    }
}

/// Projective intervals `[H1, H1']` and `[H3, H3']` through `[H2, H2']`, with
/// `H2' = H1' v H2 = H3' v H2`, `H1 = H1' ^ H2`, `H3 = H3' ^ H2`.
pub fn check_p3_projective(
    h1p: &Subspace,
    h2: &Subspace,
    h3p: &Subspace,
    h: Option<&Subspace>,
    tol: &Tolerance,
) -> Result<P3Residuals> {
    let h2p = join(h1p, h2, tol)?;
    if !join(h3p, h2, tol)?.same_as(&h2p, tol)? {
        return Err(Error::PreconditionViolated("H1' v H2 differs from H3' v H2".into()));
    }
    let first = Interval::new(meet(h1p, h2, tol)?, h1p.clone(), tol)?;
    let third = Interval::new(meet(h2, h3p, tol)?, h3p.clone(), tol)?;

    let lhs = proj_map(&third) - proj_map(&first);
    let rhs = mobius_pair(h1p, h2, tol)? - mobius_pair(h2, h3p, tol)?;
    let endpoints = lhs.distance(&rhs);

    let interior = match h {
        None => None,
        Some(h) => {
            if !first.contains(h, tol)? {
                return Err(Error::PreconditionViolated("h is not in [H1, H1']".into()));
            }
            let hi = projective_map(h, h2, h3p, tol)?;
            let lhs = proj_map(&Interval::new(third.lower().clone(), hi.clone(), tol)?)
                - proj_map(&Interval::new(first.lower().clone(), h.clone(), tol)?);
            let rhs = mobius_pair(h, h2, tol)? - mobius_pair(h2, &hi, tol)?;
            Some(lhs.distance(&rhs))
        }
    };
    Ok(P3Residuals { endpoints, interior })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub eigenvalue_sum: f64,
    pub zero_count: usize,
    pub required_zeros: usize,
    pub pass: bool,
}

pub const P1_SUM_LIMIT: f64 = 1e-8;
pub const P1_ZERO_THRESHOLD: f64 = 1e-7;

/// Eigenvalues of `D(H1, H2)`: they sum to zero, and at least
/// `d - dim(H1 v H2)` of them vanish.
pub fn spectral_check_p1(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<SpectralReport> {
    let d = mobius_pair(h1, h2, tol)?;
    let eigenvalues = hermitian_eig(&d)?.eigenvalues;
    let eigenvalue_sum: f64 = eigenvalues.iter().sum();
    let zero_count = eigenvalues.iter().filter(|l| l.abs() <= P1_ZERO_THRESHOLD).count();
    let required_zeros = h1.ambient_dim() - join(h1, h2, tol)?.rank();
    Ok(SpectralReport {
        pass: eigenvalue_sum.abs() <= P1_SUM_LIMIT && zero_count >= required_zeros,
        eigenvalues,
        eigenvalue_sum,
        zero_count,
        required_zeros,
    })
}

/// `H1 = C + A`, `H2 = C + B` from generic vectors, with `h` between
/// `H1 ^ H2 = C` and `H1`.
#[derive(Debug, Clone)]
pub struct ChainSample {
    pub h1: Subspace,
    pub h2: Subspace,
    pub h: Subspace,
}

fn columns(g: &ComplexMatrix, range: std::ops::Range<usize>) -> ComplexMatrix {
    ComplexMatrix::from_fn(g.rows(), range.len(), |i, j| g[(i, range.start + j)])
}

pub fn random_chain_sample(rng: &mut TrialRng, d: usize, tol: &Tolerance) -> ChainSample {
    // c + a + b <= d keeps H1 ^ H2 equal to C.
    let a = rng.range(1, (d - 1).max(1));
    let b = rng.range(1, (d - a).max(1));
    let c = rng.range(0, d - a - b);
    let g = gaussian_matrix(rng, d, c + a + b);
    let shared = Subspace::span(&columns(&g, 0..c), tol);
    let only1 = Subspace::span(&columns(&g, c..c + a), tol);
    let only2 = Subspace::span(&columns(&g, c + a..c + a + b), tol);
    let h1 = join(&shared, &only1, tol).expect("same dimension");
    let h2 = join(&shared, &only2, tol).expect("same dimension");
    let k = rng.range(0, a);
    let h = join(&shared, &only1.random_within(rng, k, tol), tol).expect("same dimension");
    ChainSample { h1, h2, h }
}

/// `H1', H2, H3'` with `H1' v H2 = H3' v H2`, plus `h` in `[H1' ^ H2, H1']`.
#[derive(Debug, Clone)]
pub struct ProjectiveSample {
    pub h1p: Subspace,
    pub h2: Subspace,
    pub h3p: Subspace,
    pub h: Subspace,
}

pub fn random_projective_sample(rng: &mut TrialRng, d: usize, tol: &Tolerance) -> ProjectiveSample {
    let r2 = rng.range(1, (d - 1).max(1));
    let k = rng.range(1, (d - r2).max(1));
    let g = gaussian_matrix(rng, d, r2 + k);
    let h2 = Subspace::span(&columns(&g, 0..r2), tol);
    let extra = columns(&g, r2..r2 + k);
    let lift = |rng: &mut TrialRng| {
        // extra directions tilted by random components inside H2
        let tilt = h2.basis().matmul(&gaussian_matrix(rng, r2, k));
        let inner_rank = rng.range(0, r2);
        let inner = h2.random_within(rng, inner_rank, tol);
        join(&inner, &Subspace::span(&(&extra + &tilt), tol), tol).expect("same dimension")
    };
    let h1p = lift(rng);
    let h3p = lift(rng);
    let bottom = meet(&h1p, &h2, tol).expect("same dimension");
    let h_rank = rng.range(0, k);
    let h = join(&bottom, &h1p.random_within(rng, h_rank, tol), tol).expect("same dimension");
    ProjectiveSample { h1p, h2, h3p, h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::three_lines;
    use crate::lattice::orthocomplement;
    use crate::mobius::mobius;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn interval(lo: &Subspace, hi: &Subspace) -> Interval {
        Interval::new(lo.clone(), hi.clone(), &tol()).unwrap()
    }

    #[test]
    fn interval_requires_order() {
        let [h1, h2, _] = three_lines(&tol());
        assert!(matches!(
            Interval::new(h1, h2, &tol()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn lower_transpose_examples() {
        let mut rng = TrialRng::new(1);
        let h1 = Subspace::random(&mut rng, 4, 2, &tol());
        let h2 = Subspace::random(&mut rng, 4, 2, &tol());
        let a = interval(&meet(&h1, &h2, &tol()).unwrap(), &h1);
        let b = interval(&h2, &join(&h1, &h2, &tol()).unwrap());
        assert!(is_lower_transpose(&a, &a, &tol()).unwrap());
        assert!(is_lower_transpose(&a, &b, &tol()).unwrap());
        assert!(!is_lower_transpose(&b, &a, &tol()).unwrap());

        let [l1, l2, _] = three_lines(&tol());
        let z = Subspace::zero(3);
        assert!(!is_lower_transpose(&interval(&z, &l1), &interval(&z, &l2), &tol()).unwrap());

        let w = IntervalPairWitness::new(a.clone(), b.clone(), TransposeRelation::LowerTranspose, None, &tol());
        assert!(w.is_ok());
        assert!(IntervalPairWitness::new(a, b, TransposeRelation::UpperTranspose, None, &tol()).is_err());
    }

    #[test]
    fn transpose_maps_round_trip() {
        let mut rng = TrialRng::new(2);
        let h1 = Subspace::random(&mut rng, 4, 2, &tol());
        let h2 = Subspace::random(&mut rng, 4, 1, &tol());
        let m = meet(&h1, &h2, &tol()).unwrap();
        assert!(transpose_up(&m, &h1, &h2, &tol())
            .unwrap()
            .same_as(&h2, &tol())
            .unwrap());
        let top = transpose_up(&h1, &h1, &h2, &tol()).unwrap();
        assert!(top.same_as(&join(&h1, &h2, &tol()).unwrap(), &tol()).unwrap());
        for _ in 0..10 {
            let h = h1.random_within(&mut rng, 1, &tol());
            let hp = transpose_up(&h, &h1, &h2, &tol()).unwrap();
            let back = transpose_down(&hp, &h1, &h2, &tol()).unwrap();
            assert!(back.distance(&h) <= 1e-9);
        }
        let outside = Subspace::random(&mut rng, 4, 1, &tol());
        assert!(matches!(
            transpose_up(&outside, &h1, &h2, &tol()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn mirrored_transpose_map() {
        let mut rng = TrialRng::new(3);
        for _ in 0..10 {
            let s = random_chain_sample(&mut rng, 5, &tol());
            let m = meet(&s.h1, &s.h2, &tol()).unwrap();
            let k = rng.range(0, s.h2.rank() - m.rank());
            let rest = Subspace::span(&(s.h2.projector() - m.projector()), &tol());
            let hh = join(&m, &rest.random_within(&mut rng, k, &tol()), &tol()).unwrap();
            let up = transpose_up(&hh, &s.h2, &s.h1, &tol()).unwrap();
            assert!(transpose_down(&up, &s.h2, &s.h1, &tol()).unwrap().distance(&hh) <= 1e-9);
        }
    }

    #[test]
    fn chain_membership_and_sandwich() {
        let mut rng = TrialRng::new(4);
        for _ in 0..25 {
            let s = random_chain_sample(&mut rng, 5, &tol());
            let r = chain_membership_residuals(&s.h1, &s.h2, &s.h, &tol()).unwrap();
            assert!(r.iter().all(|&x| x <= 1e-9), "{r:?}");
            let [a, b, c] = transpose_chain(&s.h1, &s.h2, &s.h, &tol()).unwrap();
            assert!(check_sandwich_lemma(&a, &b, &c, &tol()).unwrap() <= 1e-9);
            assert!(check_sandwich_lemma(&a, &a, &a, &tol()).unwrap() <= 1e-12);
            // mirror chain from the H2 side
            let [a2, b2, c2] = transpose_chain(&s.h2, &s.h1, &meet(&s.h1, &s.h2, &tol()).unwrap(), &tol()).unwrap();
            assert!(check_sandwich_lemma(&a2, &b2, &c2, &tol()).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn sandwich_from_explicit_relations() {
        // Build the chain from its four defining relations and rebuild Ha.
        let mut rng = TrialRng::new(5);
        for _ in 0..10 {
            let s = random_chain_sample(&mut rng, 5, &tol());
            let m = meet(&s.h1, &s.h2, &tol()).unwrap();
            let ha = s.h.clone();
            let hap = join(&ha, &s.h2, &tol()).unwrap();
            assert!(meet(&ha, &s.h2, &tol()).unwrap().distance(&m) <= 1e-9);
            assert!(meet(&hap, &s.h1, &tol()).unwrap().distance(&ha) <= 1e-9);
            let rebuilt = meet(&join(&ha, &s.h2, &tol()).unwrap(), &s.h1, &tol()).unwrap();
            assert!(rebuilt.distance(&ha) <= 1e-9);
        }
    }

    #[test]
    fn transpose_order_is_partial_order() {
        let mut rng = TrialRng::new(6);
        for _ in 0..15 {
            let s = random_chain_sample(&mut rng, 5, &tol());
            let [a, b, c] = transpose_chain(&s.h1, &s.h2, &s.h, &tol()).unwrap();
            assert!(is_lower_transpose(&a, &c, &tol()).unwrap());
            if is_lower_transpose(&b, &a, &tol()).unwrap() {
                assert!(a.same_as(&b, &tol()).unwrap());
            }
            if !a.same_as(&c, &tol()).unwrap() {
                assert!(!is_lower_transpose(&c, &a, &tol()).unwrap());
            }
        }
    }

    #[test]
    fn proj_map_examples() {
        let [h1, h2, _] = three_lines(&tol());
        let z = Subspace::zero(3);
        assert!(proj_map(&interval(&h1, &h1)).frobenius_norm() < 1e-15);
        assert!(proj_map(&interval(&z, &Subspace::full(3))).distance(&ComplexMatrix::identity(3)) < 1e-12);
        let p = proj_map(&interval(&meet(&h1, &h2, &tol()).unwrap(), &h1));
        assert!((p.trace().re - 1.0).abs() < 1e-12);
        let mut rng = TrialRng::new(7);
        for _ in 0..10 {
            let s = random_chain_sample(&mut rng, 5, &tol());
            let p = proj_map(&interval(&s.h, &s.h1));
            assert!(p.matmul(&p).distance(&p) <= 1e-9);
            assert!(p.hermiticity_residual() <= 1e-12);
            assert!((p.trace().re - (s.h1.rank() - s.h.rank()) as f64).abs() <= 1e-9);
        }
    }

    #[test]
    fn psi_matches_mobius() {
        let c1 = Subspace::coordinate(3, &[0]);
        let c2 = Subspace::coordinate(3, &[0, 1]);
        assert!(psi_map(&c1, &c2, &tol()).unwrap().is_zero(&tol()));
        let [h1, h2, _] = three_lines(&tol());
        let psi = psi_map(&h1, &h2, &tol()).unwrap();
        assert!((psi.matrix[(0, 0)].re - 0.019).abs() < 5e-3);
        assert!((psi.matrix[(1, 2)].re + 0.714).abs() < 5e-3);
        let mut rng = TrialRng::new(8);
        for _ in 0..20 {
            let a = Subspace::random(&mut rng, 4, 2, &tol());
            let rb = rng.range(1, 3);
            let b = Subspace::random(&mut rng, 4, rb, &tol());
            let psi = psi_map(&a, &b, &tol()).unwrap().matrix;
            let args = [a.clone(), b.clone()];
            assert!(psi.distance(&mobius(&args, &tol()).unwrap().matrix) <= 1e-9);
            assert!(psi.distance(&psi_map(&b, &a, &tol()).unwrap().matrix) <= 1e-9);
        }
    }

    #[test]
    fn p2_examples() {
        let mut rng = TrialRng::new(9);
        let s = random_chain_sample(&mut rng, 5, &tol());
        let m = meet(&s.h1, &s.h2, &tol()).unwrap();
        for h in [&s.h1, &m] {
            assert!(check_p2_decomposition(&s.h1, &s.h2, h, &tol()).unwrap().max() <= 1e-9);
        }
        let hp = join(&s.h1, &s.h2, &tol()).unwrap();
        assert!(mobius_pair(&hp, &s.h1, &tol()).unwrap().frobenius_norm() <= 1e-9);
        for _ in 0..30 {
            let s = random_chain_sample(&mut rng, 5, &tol());
            assert!(check_p2_decomposition(&s.h1, &s.h2, &s.h, &tol()).unwrap().max() <= 1e-9);
        }
        let outside = Subspace::random(&mut rng, 5, 1, &tol());
        assert!(check_p2_decomposition(&s.h1, &s.h2, &outside, &tol()).is_err());
    }

    #[test]
    fn p3_examples() {
        let mut rng = TrialRng::new(10);
        for _ in 0..30 {
            let s = random_projective_sample(&mut rng, 5, &tol());
            let r = check_p3_projective(&s.h1p, &s.h2, &s.h3p, Some(&s.h), &tol()).unwrap();
            assert!(r.max() <= 1e-9, "{r:?}");
            let same = check_p3_projective(&s.h1p, &s.h2, &s.h1p, None, &tol()).unwrap();
            assert!(same.endpoints <= 1e-9);
            let end = check_p3_projective(&s.h1p, &s.h2, &s.h3p, Some(&s.h1p), &tol()).unwrap();
            assert!((end.interior.unwrap() - end.endpoints).abs() <= 1e-9);

            // image of h lands in [H3, H3'] and maps back
            let hi = projective_map(&s.h, &s.h2, &s.h3p, &tol()).unwrap();
            let back = projective_map(&hi, &s.h2, &s.h1p, &tol()).unwrap();
            assert!(back.distance(&s.h) <= 1e-9);
        }
        let a = Subspace::coordinate(4, &[0]);
        let b = Subspace::coordinate(4, &[1]);
        let c = Subspace::coordinate(4, &[2]);
        assert!(matches!(
            check_p3_projective(&a, &b, &c, None, &tol()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn p1_spectra() {
        let c1 = Subspace::coordinate(4, &[0, 1]);
        let c2 = Subspace::coordinate(4, &[1, 2]);
        let r = spectral_check_p1(&c1, &c2, &tol()).unwrap();
        assert!(r.eigenvalues.iter().all(|l| l.abs() < 1e-12) && r.pass);

        let [h1, h2, _] = three_lines(&tol());
        let r = spectral_check_p1(&h1, &h2, &tol()).unwrap();
        assert!(r.pass && r.required_zeros == 1 && r.zero_count >= 1);

        let mut rng = TrialRng::new(11);
        for _ in 0..10 {
            let a = Subspace::random(&mut rng, 6, 1, &tol());
            let b = Subspace::random(&mut rng, 6, 1, &tol());
            let r = spectral_check_p1(&a, &b, &tol()).unwrap();
            assert!(r.pass && r.zero_count >= 4);
        }
        let h1c = orthocomplement(&h1, &tol());
        assert!(spectral_check_p1(&h1c, &h2, &tol()).unwrap().pass);
    }
}
