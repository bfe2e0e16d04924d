//! Expectation values and standard deviations against density matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{join, meet, Subspace};
use crate::mobius::mobius_pair;
use crate::numerics::{hermitian_eig, ComplexMatrix, Tolerance};
use crate::rng::{gaussian_matrix, TrialRng};

const MIN_EIGENVALUE: f64 = -1e-10;
const IMAG_LIMIT: f64 = 1e-10;
const VARIANCE_CLAMP: f64 = -1e-8;

#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        matrix.check_finite()?;
        matrix.require_square()?;
        let herm = matrix.hermiticity_residual();
        if herm > tol.identity_eps {
            return Err(Error::InvalidDensityMatrix(format!("hermiticity residual {herm:.3e}")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.identity_eps || tr.im.abs() > tol.identity_eps {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min = hermitian_eig(&matrix.hermitian_part())?.eigenvalues[0];
        if min < MIN_EIGENVALUE {
            return Err(Error::InvalidDensityMatrix(format!("eigenvalue {min:.3e}")));
        }
        Ok(DensityMatrix { matrix })
    }

    /// `|psi><psi|` for a normalized copy of `psi`.
    pub fn pure(psi: &[crate::numerics::C64]) -> Result<Self> {
        let n = crate::numerics::norm(psi);
        if n == 0.0 {
            return Err(Error::InvalidDensityMatrix("zero state vector".into()));
        }
        let v: Vec<_> = psi.iter().map(|z| z / n).collect();
        Ok(DensityMatrix {
            matrix: ComplexMatrix::outer(&v),
        })
    }

    /// `G G^dagger / Tr(G G^dagger)` for complex Gaussian `G`.
    pub fn random(rng: &mut TrialRng, d: usize) -> Self {
        let g = gaussian_matrix(rng, d, d);
        let w = g.matmul(&g.adjoint());
        let tr = w.trace().re;
        DensityMatrix {
            matrix: w.scale(1.0 / tr).hermitian_part(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn from_json(s: &str, tol: &Tolerance) -> Result<Self> {
        DensityMatrix::new(ComplexMatrix::from_json(s)?, tol)
    }
}

fn check_observable(rho: &DensityMatrix, theta: &ComplexMatrix) -> Result<()> {
    theta.require_square()?;
    if theta.rows() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: theta.rows(),
        });
    }
    let herm = theta.hermiticity_residual();
    if herm > 1e-8 * theta.frobenius_norm().max(1.0) {
        return Err(Error::NonHermitianInput { residual: herm });
    }
    Ok(())
}

/// `Tr(rho Theta)` for trace-class `m`, with the imaginary part checked.
fn real_trace(m: &ComplexMatrix) -> Result<f64> {
    let t = m.trace();
    if t.im.abs() > IMAG_LIMIT * t.re.abs().max(1.0) {
        return Err(Error::InternalInconsistency(format!(
            "Tr has imaginary part {:.3e}",
            t.im
        )));
    }
    Ok(t.re)
}

pub fn expectation(rho: &DensityMatrix, theta: &ComplexMatrix) -> Result<f64> {
    check_observable(rho, theta)?;
    real_trace(&rho.matrix.matmul(theta))
}

pub fn variance(rho: &DensityMatrix, theta: &ComplexMatrix) -> Result<f64> {
    let mean = expectation(rho, theta)?;
    let second = real_trace(&theta.matmul(theta).matmul(&rho.matrix))?;
    let var = second - mean * mean;
    if var < VARIANCE_CLAMP {
        return Err(Error::NegativeVariance(var));
    }
    Ok(var.max(0.0))
}

pub fn stddev(rho: &DensityMatrix, theta: &ComplexMatrix) -> Result<f64> {
    Ok(variance(rho, theta)?.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub operator: String,
    pub mean: f64,
    pub stddev: f64,
}

impl MomentReport {
    pub fn compute(name: impl Into<String>, rho: &DensityMatrix, theta: &ComplexMatrix) -> Result<Self> {
        Ok(MomentReport {
            operator: name.into(),
            mean: expectation(rho, theta)?,
            stddev: stddev(rho, theta)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("moment report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResiduals {
    pub mean: f64,
    pub variance: f64,
}

impl MomentResiduals {
    pub fn max(&self) -> f64 {
        self.mean.max(self.variance)
    }
}

/// The additivity defect of averages and the corrected variance relation
/// for `D(H1, H2)`, each moment computed directly.
pub fn check_moment_relations(
    rho: &DensityMatrix,
    h1: &Subspace,
    h2: &Subspace,
    tol: &Tolerance,
) -> Result<MomentResiduals> {
    let d = mobius_pair(h1, h2, tol)?;
    let j = join(h1, h2, tol)?;
    let m = meet(h1, h2, tol)?;
    let (p1, p2, pj, pm) = (h1.projector(), h2.projector(), j.projector(), m.projector());

    let e = |t: &ComplexMatrix| expectation(rho, t);
    let v = |t: &ComplexMatrix| variance(rho, t);
    let (e1, e2, ej, em) = (e(p1)?, e(p2)?, e(pj)?, e(pm)?);

    let mean = (e(&d)? - ej + e1 + e2 - em).abs();

    let sym = p1.matmul(p2) + p2.matmul(p1);
    let a = -2.0 * e1 * e1 - 2.0 * e2 * e2 - 2.0 * e1 * e2
        + 2.0 * ej * (e1 + e2)
        + e(&sym)?
        + 2.0 * em * (e1 + e2 - ej - 1.0);
    let variance = (v(&d)? - v(pj)? + v(p1)? + v(p2)? - v(pm)? - a).abs();

    Ok(MomentResiduals { mean, variance })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DsClass {
    Lower,
    Upper,
    Additive,
}

impl std::fmt::Display for DsClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DsClass::Lower => "lower",
            DsClass::Upper => "upper",
            DsClass::Additive => "additive",
        })
    }
}

/// Sign of `E[D]` decides whether `Tr[rho P(H1 v H2)]` behaves as an upper or
/// a lower probability.
pub fn classify_mean(mean: f64, tol: &Tolerance) -> DsClass {
    if mean > tol.identity_eps {
        DsClass::Upper
    } else if mean < -tol.identity_eps {
        DsClass::Lower
    } else {
        DsClass::Additive
    }
}

pub fn ds_classify(rho: &DensityMatrix, h1: &Subspace, h2: &Subspace, tol: &Tolerance) -> Result<DsClass> {
    let d = mobius_pair(h1, h2, tol)?;
    Ok(classify_mean(expectation(rho, &d)?, tol))
}
