//! Möbius (non-additivity) operators over lists of subspaces.
//!
//! For `H1..Hn` the operator is the alternating sum over nonempty index sets
//! `E` of `(-1)^(n-|E|) P(join of E)`, plus `(-1)^n P(meet of all)`. The dual
//! swaps joins and meets. Joins and meets are memoized per bitmask.

use crate::error::{Error, Result};
use crate::lattice::{join, leq, meet, Subspace};
use crate::numerics::{ComplexMatrix, Tolerance};
use crate::report::IdentityCheck;

/// Subset enumeration is `2^n`; beyond this it stops being reasonable.
pub const MAX_ARGUMENTS: usize = 20;

#[derive(Debug, Clone)]
pub struct MobiusOperator {
    pub matrix: ComplexMatrix,
    pub arguments: Vec<Subspace>,
    pub dual: bool,
}

impl MobiusOperator {
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        self.matrix.frobenius_norm() <= tol.identity_eps
    }
}

fn validate(subspaces: &[Subspace]) -> Result<usize> {
    let n = subspaces.len();
    if n < 2 {
        return Err(Error::PreconditionViolated(format!(
            "Möbius operators need at least two subspaces, got {n}"
        )));
    }
    if n > MAX_ARGUMENTS {
        return Err(Error::TooManyArguments {
            count: n,
            limit: MAX_ARGUMENTS,
        });
    }
    let d = subspaces[0].ambient_dim();
    for h in &subspaces[1..] {
        if h.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: h.ambient_dim(),
            });
        }
    }
    Ok(d)
}

/// Lattice operation folded over every nonempty subset, indexed by bitmask.
fn subset_table(
    subspaces: &[Subspace],
    op: fn(&Subspace, &Subspace, &Tolerance) -> Result<Subspace>,
    tol: &Tolerance,
) -> Result<Vec<Option<Subspace>>> {
    let n = subspaces.len();
    let mut table: Vec<Option<Subspace>> = vec![None; 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let value = if rest == 0 {
            subspaces[low].clone()
        } else {
            let prev = table[rest].as_ref().expect("smaller masks are filled first");
            op(prev, &subspaces[low], tol)?
        };
        table[mask] = Some(value);
    }
    Ok(table)
}

fn alternating_sum(
    subspaces: &[Subspace],
    summed: fn(&Subspace, &Subspace, &Tolerance) -> Result<Subspace>,
    closing: fn(&Subspace, &Subspace, &Tolerance) -> Result<Subspace>,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    let n = subspaces.len();
    let d = subspaces[0].ambient_dim();
    let table = subset_table(subspaces, summed, tol)?;
    let mut acc = ComplexMatrix::zeros(d, d);
    for (mask, entry) in table.iter().enumerate().skip(1) {
        let p = entry.as_ref().expect("filled").projector();
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            acc += p;
        } else {
            acc -= p;
        }
    }
    let mut closing_term = subspaces[0].clone();
    for h in &subspaces[1..] {
        closing_term = closing(&closing_term, h, tol)?;
    }
    if n.is_multiple_of(2) {
        acc += closing_term.projector();
    } else {
        acc -= closing_term.projector();
    }
    Ok(acc)
}

/// Möbius operator `D(H1, ..., Hn)`.
pub fn mobius(subspaces: &[Subspace], tol: &Tolerance) -> Result<MobiusOperator> {
    validate(subspaces)?;
    Ok(MobiusOperator {
        matrix: alternating_sum(subspaces, join, meet, tol)?,
        arguments: subspaces.to_vec(),
        dual: false,
    })
}

/// Dual Möbius operator: meets inside the sum, the join of all as closing term.
pub fn mobius_dual(subspaces: &[Subspace], tol: &Tolerance) -> Result<MobiusOperator> {
    validate(subspaces)?;
    Ok(MobiusOperator {
        matrix: alternating_sum(subspaces, meet, join, tol)?,
        arguments: subspaces.to_vec(),
        dual: true,
    })
}

/// `D(H1, H2) = P(H1 v H2) + P(H1 ^ H2) - P(H1) - P(H2)`, the matrix only.
pub fn mobius_pair(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<ComplexMatrix> {
    let j = join(h1, h2, tol)?;
    let m = meet(h1, h2, tol)?;
    Ok(&(&(j.projector() + m.projector()) - h1.projector()) - h2.projector())
}

/// `|[P1, P2] - D(H1, H2)(P1 - P2)|_F`.
pub fn check_commutator_identity_2(h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<f64> {
    let d = mobius_pair(h1, h2, tol)?;
    let p1 = h1.projector();
    let p2 = h2.projector();
    let lhs = p1.commutator(p2);
    let rhs = d.matmul(&(p1 - p2));
    Ok(lhs.distance(&rhs))
}

/// Residuals of the three-subspace identities.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleResiduals {
    /// `D(1,2,3) + D~(1,2,3) + D(1,2) + D(1,3) + D(2,3) = 0`
    pub sum_rule: f64,
    /// `P1 P3 P2 - P(H1^H2^H3) = P1 D(1,2,3) P2`
    pub sandwich: f64,
    /// `[[P1,P3],P2] = (P1-P3) D P2 + P2 D (P1-P3)`
    pub double_commutator: f64,
    /// When `H1 <= H2`: `D(1,2,3) + D(1,3) = 0` and `D~(1,2,3) + D(2,3) = 0`.
    pub nested: Option<(f64, f64)>,
}

impl TripleResiduals {
    pub fn max(&self) -> f64 {
        let nested = self.nested.map_or(0.0, |(a, b)| a.max(b));
        self.sum_rule.max(self.sandwich).max(self.double_commutator).max(nested)
    }

    pub fn checks(&self, tol: f64) -> Vec<IdentityCheck> {
        let mut out = vec![
            IdentityCheck::new("triple sum rule", self.sum_rule, tol),
            IdentityCheck::new("triple sandwich", self.sandwich, tol),
            IdentityCheck::new("double commutator", self.double_commutator, tol),
        ];
        if let Some((a, b)) = self.nested {
            out.push(IdentityCheck::new("nested D(1,2,3) + D(1,3)", a, tol));
            out.push(IdentityCheck::new("nested D~(1,2,3) + D(2,3)", b, tol));
        }
        out
    }
}

pub fn check_triple_identities(
    h1: &Subspace,
    h2: &Subspace,
    h3: &Subspace,
    tol: &Tolerance,
) -> Result<TripleResiduals> {
    let args = [h1.clone(), h2.clone(), h3.clone()];
    let d123 = mobius(&args, tol)?.matrix;
    let dual = mobius_dual(&args, tol)?.matrix;
    let d12 = mobius_pair(h1, h2, tol)?;
    let d13 = mobius_pair(h1, h3, tol)?;
    let d23 = mobius_pair(h2, h3, tol)?;

    let sum = &(&(&(&d123 + &dual) + &d12) + &d13) + &d23;
    let sum_rule = sum.frobenius_norm();

    let (p1, p2, p3) = (h1.projector(), h2.projector(), h3.projector());
    let meet_all = meet(&meet(h1, h2, tol)?, h3, tol)?;
    let lhs = &p1.matmul(p3).matmul(p2) - meet_all.projector();
    let rhs = p1.matmul(&d123).matmul(p2);
    let sandwich = lhs.distance(&rhs);

    let lhs = p1.commutator(p3).commutator(p2);
    let diff13 = p1 - p3;
    let rhs = &diff13.matmul(&d123).matmul(p2) + &p2.matmul(&d123).matmul(&diff13);
    let double_commutator = lhs.distance(&rhs);

    let nested = if leq(h1, h2, tol)? {
        Some(((&d123 + &d13).frobenius_norm(), (&dual + &d23).frobenius_norm()))
    } else {
        None
    };

    Ok(TripleResiduals {
        sum_rule,
        sandwich,
        double_commutator,
        nested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::three_lines;
    use crate::lattice::orthocomplement;
    use crate::rng::TrialRng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    // Written-out two- and three-argument formulas, independent of the bitmask
    // enumeration.
    fn explicit_pair(a: &Subspace, b: &Subspace) -> ComplexMatrix {
        let t = tol();
        let j = join(a, b, &t).unwrap();
        let m = meet(a, b, &t).unwrap();
        j.projector() + m.projector() - a.projector() - b.projector()
    }

    fn explicit_triple(a: &Subspace, b: &Subspace, c: &Subspace) -> (ComplexMatrix, ComplexMatrix) {
        let t = tol();
        let j = |x: &Subspace, y: &Subspace| join(x, y, &t).unwrap();
        let m = |x: &Subspace, y: &Subspace| meet(x, y, &t).unwrap();
        let j123 = j(&j(a, b), c);
        let m123 = m(&m(a, b), c);
        let singles = a.projector() + b.projector() + c.projector();
        let d = j123.projector() - j(a, b).projector() - j(a, c).projector() - j(b, c).projector() + &singles
            - m123.projector();
        let dt = m123.projector() - m(a, b).projector() - m(a, c).projector() - m(b, c).projector() + &singles
            - j123.projector();
        (d, dt)
    }

    #[test]
    fn general_enumeration_matches_written_out_forms() {
        for trial in 0..30 {
            let mut rng = TrialRng::stream(21, trial);
            let d = 2 + trial as usize % 4;
            let hs: Vec<Subspace> = (0..3)
                .map(|_| {
                    let r = rng.range(1, d);
                    Subspace::random(&mut rng, d, r, &tol())
                })
                .collect();
            let pair = mobius(&hs[..2], &tol()).unwrap();
            assert!(pair.matrix.distance(&explicit_pair(&hs[0], &hs[1])) < 1e-10);
            let (d3, dt3) = explicit_triple(&hs[0], &hs[1], &hs[2]);
            assert!(mobius(&hs, &tol()).unwrap().matrix.distance(&d3) < 1e-10);
            assert!(mobius_dual(&hs, &tol()).unwrap().matrix.distance(&dt3) < 1e-10);
        }
    }

    #[test]
    fn nested_pair_gives_zero() {
        let mut rng = TrialRng::new(1);
        let big = Subspace::random(&mut rng, 5, 3, &tol());
        let small = big.random_within(&mut rng, 2, &tol());
        let op = mobius(&[small, big], &tol()).unwrap();
        assert!(op.is_zero(&tol()));
    }

    #[test]
    fn pair_operator_on_example_lines() {
        let [h1, h2, _] = three_lines(&tol());
        let op = mobius(&[h1, h2], &tol()).unwrap();
        assert!((op.matrix[(0, 0)].re - 0.019).abs() < 5e-3);
        assert!((op.matrix[(2, 2)].re - (-0.422)).abs() < 5e-3);
        assert!(op.trace().abs() < 1e-12);
    }

    #[test]
    fn dual_equals_primal_for_two_arguments() {
        let mut rng = TrialRng::new(2);
        let a = Subspace::random(&mut rng, 4, 2, &tol());
        let b = Subspace::random(&mut rng, 4, 3, &tol());
        let args = [a, b];
        let p = mobius(&args, &tol()).unwrap();
        let q = mobius_dual(&args, &tol()).unwrap();
        assert!(p.matrix.distance(&q.matrix) < 1e-12);
    }

    #[test]
    fn chain_gives_zero_both_ways() {
        let mut rng = TrialRng::new(3);
        let top = Subspace::random(&mut rng, 5, 4, &tol());
        let mid = top.random_within(&mut rng, 2, &tol());
        let low = mid.random_within(&mut rng, 1, &tol());
        // Any ordering of a chain.
        for args in [
            [low.clone(), mid.clone(), top.clone()],
            [top.clone(), low.clone(), mid.clone()],
        ] {
            assert!(mobius(&args, &tol()).unwrap().is_zero(&tol()));
            assert!(mobius_dual(&args, &tol()).unwrap().is_zero(&tol()));
        }
    }

    #[test]
    fn argument_count_limits() {
        let h = Subspace::full(2);
        assert!(matches!(
            mobius(std::slice::from_ref(&h), &tol()),
            Err(Error::PreconditionViolated(_))
        ));
        let many = vec![h.clone(); MAX_ARGUMENTS + 1];
        assert!(matches!(mobius(&many, &tol()), Err(Error::TooManyArguments { .. })));
        assert!(matches!(
            mobius(&[h, Subspace::full(3)], &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn commutator_identity() {
        let a = Subspace::coordinate(3, &[0]);
        let b = Subspace::coordinate(3, &[0, 1]);
        assert!(check_commutator_identity_2(&a, &b, &tol()).unwrap() <= 1e-12);

        let [h1, h2, _] = three_lines(&tol());
        assert!(check_commutator_identity_2(&h1, &h2, &tol()).unwrap() <= 1e-9);

        for trial in 0..20 {
            let mut rng = TrialRng::stream(4, trial);
            let r1 = rng.range(1, 4);
            let r2 = rng.range(1, 4);
            let a = Subspace::random(&mut rng, 5, r1, &tol());
            let b = Subspace::random(&mut rng, 5, r2, &tol());
            assert!(check_commutator_identity_2(&a, &b, &tol()).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn triple_identities_examples() {
        let [h1, h2, h3] = three_lines(&tol());
        let r = check_triple_identities(&h1, &h2, &h3, &tol()).unwrap();
        assert!(r.max() <= 1e-9, "{r:?}");
        assert!(r.nested.is_none());

        let axes: Vec<Subspace> = (0..3).map(|i| Subspace::coordinate(3, &[i])).collect();
        let r = check_triple_identities(&axes[0], &axes[1], &axes[2], &tol()).unwrap();
        assert!(r.max() <= 1e-12);

        let mut rng = TrialRng::new(5);
        let top = Subspace::random(&mut rng, 4, 3, &tol());
        let low = top.random_within(&mut rng, 1, &tol());
        let other = Subspace::random(&mut rng, 4, 2, &tol());
        let r = check_triple_identities(&low, &top, &other, &tol()).unwrap();
        let (a, b) = r.nested.expect("H1 <= H2 holds");
        assert!(a <= 1e-12 && b <= 1e-12, "{a} {b}");
        assert!(r.max() <= 1e-9);
    }

    #[test]
    fn complement_pair_flips_sign() {
        for trial in 0..10 {
            let mut rng = TrialRng::stream(6, trial);
            let a = Subspace::random(&mut rng, 4, 2, &tol());
            let b = Subspace::random(&mut rng, 4, 1, &tol());
            let d = mobius_pair(&a, &b, &tol()).unwrap();
            let dp = mobius_pair(&orthocomplement(&a, &tol()), &orthocomplement(&b, &tol()), &tol()).unwrap();
            assert!((&d + &dp).frobenius_norm() <= 1e-9);
        }
    }
}
