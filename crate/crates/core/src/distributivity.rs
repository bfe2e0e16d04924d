//! Projectors measuring the failure of distributivity, and the deviation from
//! the law of total probability.
//!
//! `varpi1(H1, H2 | H0) = P[(H1 v H0) ^ (H2 v H0)] - P[(H1 ^ H2) v H0]`
//! `varpi2(H1, H2 | H0) = P[(H1 v H2) ^ H0] - P[(H1 ^ H0) v (H2 ^ H0)]`
//! `pi(H0; H1)          = P(H0) - P(H1 ^ H0) - P(H1' ^ H0)`

use crate::error::Result;
use crate::lattice::{join, meet, orthocomplement, Subspace};
use crate::mobius::{mobius, mobius_dual, mobius_pair};
use crate::numerics::{ComplexMatrix, Tolerance};
use crate::report::IdentityCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviationKind {
    Varpi1,
    Varpi2,
    Pi,
}

impl DeviationKind {
    pub fn label(self) -> &'static str {
        match self {
            DeviationKind::Varpi1 => "varpi1",
            DeviationKind::Varpi2 => "varpi2",
            DeviationKind::Pi => "pi",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DeviationProjector {
    pub matrix: ComplexMatrix,
    pub kind: DeviationKind,
    /// `(H1, H2, H0)` for the varpi kinds, `(H0, H1)` for pi.
    pub arguments: Vec<Subspace>,
}

impl DeviationProjector {
    /// `|M^2 - M|_F`. Enforced for the varpi kinds, only measured for pi.
    pub fn idempotence_residual(&self) -> f64 {
        self.matrix.matmul(&self.matrix).distance(&self.matrix)
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        self.matrix.frobenius_norm() <= tol.identity_eps
    }
}

pub fn varpi1(h1: &Subspace, h2: &Subspace, h0: &Subspace, tol: &Tolerance) -> Result<DeviationProjector> {
    let upper = meet(&join(h1, h0, tol)?, &join(h2, h0, tol)?, tol)?;
    let lower = join(&meet(h1, h2, tol)?, h0, tol)?;
    Ok(DeviationProjector {
        matrix: upper.projector() - lower.projector(),
        kind: DeviationKind::Varpi1,
        arguments: vec![h1.clone(), h2.clone(), h0.clone()],
    })
}

pub fn varpi2(h1: &Subspace, h2: &Subspace, h0: &Subspace, tol: &Tolerance) -> Result<DeviationProjector> {
    let upper = meet(&join(h1, h2, tol)?, h0, tol)?;
    let lower = join(&meet(h1, h0, tol)?, &meet(h2, h0, tol)?, tol)?;
    Ok(DeviationProjector {
        matrix: upper.projector() - lower.projector(),
        kind: DeviationKind::Varpi2,
        arguments: vec![h1.clone(), h2.clone(), h0.clone()],
    })
}

pub fn pi_deviation(h0: &Subspace, h1: &Subspace, tol: &Tolerance) -> Result<DeviationProjector> {
    let h1_perp = orthocomplement(h1, tol);
    let a = meet(h1, h0, tol)?;
    let b = meet(&h1_perp, h0, tol)?;
    Ok(DeviationProjector {
        matrix: &(h0.projector() - a.projector()) - b.projector(),
        kind: DeviationKind::Pi,
        arguments: vec![h0.clone(), h1.clone()],
    })
}

/// Residuals of the Möbius-operator expansions of `varpi1` and `varpi2`
/// against their direct construction.
#[derive(Debug, Clone, PartialEq)]
pub struct VarpiLinks {
    /// Pair-operator expansion of varpi1 (pair operators plus projector terms).
    pub varpi1_pairs: f64,
    /// Expansion through `D(H1, H2, H0)`.
    pub varpi1_triple: f64,
    pub varpi2_pairs: f64,
    /// Expansion through the dual `D~(H1, H2, H0)`.
    pub varpi2_triple: f64,
}

impl VarpiLinks {
    pub fn max(&self) -> f64 {
        self.varpi1_pairs
            .max(self.varpi1_triple)
            .max(self.varpi2_pairs)
            .max(self.varpi2_triple)
    }

    pub fn checks(&self, tol: f64) -> Vec<IdentityCheck> {
        vec![
            IdentityCheck::new("varpi1 via pair operators", self.varpi1_pairs, tol),
            IdentityCheck::new("varpi1 via triple operator", self.varpi1_triple, tol),
            IdentityCheck::new("varpi2 via pair operators", self.varpi2_pairs, tol),
            IdentityCheck::new("varpi2 via dual triple operator", self.varpi2_triple, tol),
        ]
    }
}

pub fn check_varpi_mobius_links(h1: &Subspace, h2: &Subspace, h0: &Subspace, tol: &Tolerance) -> Result<VarpiLinks> {
    let w1 = varpi1(h1, h2, h0, tol)?.matrix;
    let w2 = varpi2(h1, h2, h0, tol)?.matrix;

    let j10 = join(h1, h0, tol)?;
    let j20 = join(h2, h0, tol)?;
    let j12 = join(h1, h2, tol)?;
    let m12 = meet(h1, h2, tol)?;
    let m10 = meet(h1, h0, tol)?;
    let m20 = meet(h2, h0, tol)?;
    let j120 = join(&j12, h0, tol)?;
    let m120 = meet(&m12, h0, tol)?;
    let p0 = h0.projector();

    let d_j10_j20 = mobius_pair(&j10, &j20, tol)?;
    let d_m12_0 = mobius_pair(&m12, h0, tol)?;
    let d_j12_0 = mobius_pair(&j12, h0, tol)?;
    let d_m10_m20 = mobius_pair(&m10, &m20, tol)?;
    let d12 = mobius_pair(h1, h2, tol)?;
    let args = [h1.clone(), h2.clone(), h0.clone()];
    let d120 = mobius(&args, tol)?.matrix;
    let dual120 = mobius_dual(&args, tol)?.matrix;

    let varpi1_pairs = &d_j10_j20 - &d_m12_0 - j120.projector() + j10.projector() + j20.projector() + m120.projector()
        - m12.projector()
        - p0;
    let varpi1_triple = -&d120 - &d_m12_0 - &d12 + &d_j10_j20;

    let varpi2_pairs = &d_j12_0 - &d_m10_m20 - j120.projector() + j12.projector() + p0 + m120.projector()
        - m10.projector()
        - m20.projector();
    let varpi2_triple = &dual120 + &d_j12_0 + &d12 - &d_m10_m20;

    Ok(VarpiLinks {
        varpi1_pairs: varpi1_pairs.distance(&w1),
        varpi1_triple: varpi1_triple.distance(&w1),
        varpi2_pairs: varpi2_pairs.distance(&w2),
        varpi2_triple: varpi2_triple.distance(&w2),
    })
}

/// `|pi(H0; H1) - varpi2(H1, H1' | H0) - D(H1 ^ H0, H1' ^ H0)|_F`.
pub fn check_pi_decomposition(h0: &Subspace, h1: &Subspace, tol: &Tolerance) -> Result<f64> {
    let pi = pi_deviation(h0, h1, tol)?.matrix;
    let h1_perp = orthocomplement(h1, tol);
    let w2 = varpi2(h1, &h1_perp, h0, tol)?.matrix;
    let d = mobius_pair(&meet(h1, h0, tol)?, &meet(&h1_perp, h0, tol)?, tol)?;
    Ok(pi.distance(&(&w2 + &d)))
}
