//! Coherent states on `Z(d)` for odd `d`, and cumulative coherent projectors
//! built from them by Gram-Schmidt.
//!
//! `D(a, b) = Z^a X^b w(-2^{-1} a b)` with `w(m) = exp(2 pi i m / d)`, acting on
//! the position basis `|X; n>`. The coherent state `|C; a, b>` is `D(a, b) f`
//! for a unit fiducial vector `f`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Subspace;
use crate::mobius::mobius;
use crate::numerics::{hermitian_eig, inner, norm, ComplexMatrix, Tolerance, C64};
use crate::observables::DensityMatrix;
use crate::report::IdentityCheck;

/// A phase-space point `(alpha, beta)` in `Z(d) x Z(d)`.
pub type Label = (usize, usize);

const FIDUCIAL_NORM_TOL: f64 = 1e-10;

/// `w(m) = exp(2 pi i (m mod d) / d)`, reduced before exponentiating.
pub fn omega(d: usize, m: i64) -> C64 {
    let r = m.rem_euclid(d as i64) as f64;
    C64::from_polar(1.0, 2.0 * PI * r / d as f64)
}

/// Normalized `exp(-(m - (d-1)/2)^2 / d) + 0.1 i m`.
pub fn generic_fiducial(d: usize) -> Vec<C64> {
    let c = (d as f64 - 1.0) / 2.0;
    let v: Vec<C64> = (0..d)
        .map(|m| {
            let x = m as f64 - c;
            C64::new((-x * x / d as f64).exp(), 0.1 * m as f64)
        })
        .collect();
    let n = norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

/// Parses `[[re, im], ...]`.
pub fn fiducial_from_json(s: &str) -> Result<Vec<C64>> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(s).map_err(|e| Error::parse("fiducial", e))?;
    Ok(raw.into_iter().map(|[re, im]| C64::new(re, im)).collect())
}

#[derive(Debug, Clone)]
pub struct CoherentFamily {
    d: usize,
    half: usize,
    fiducial: Vec<C64>,
    fourier: ComplexMatrix,
    z: ComplexMatrix,
    x: ComplexMatrix,
    /// `D(a, b)` at index `a * d + b`.
    displacements: Vec<ComplexMatrix>,
    states: Vec<Vec<C64>>,
}

impl CoherentFamily {
    pub fn new(d: usize, fiducial: Vec<C64>) -> Result<Self> {
        if d.is_multiple_of(2) || d < 3 {
            return Err(Error::EvenDimension(d));
        }
        if fiducial.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: fiducial.len(),
            });
        }
        let n = norm(&fiducial);
        if (n - 1.0).abs() > FIDUCIAL_NORM_TOL || !n.is_finite() {
            return Err(Error::NonUnitFiducial(n));
        }
        let half = d.div_ceil(2);
        let s = 1.0 / (d as f64).sqrt();
        let fourier = ComplexMatrix::from_fn(d, d, |m, n| omega(d, (m * n) as i64) * s);
        let z = ComplexMatrix::from_fn(
            d,
            d,
            |m, n| if m == n { omega(d, m as i64) } else { C64::new(0.0, 0.0) },
        );
        // X = sum_n w(-n) |P;n><P;n| with |P;n> = F |X;n>
        let phases = ComplexMatrix::from_fn(d, d, |m, n| {
            if m == n {
                omega(d, -(m as i64))
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let x = fourier.matmul(&phases).matmul(&fourier.adjoint());

        let mut z_pows = vec![ComplexMatrix::identity(d)];
        let mut x_pows = vec![ComplexMatrix::identity(d)];
        for k in 1..d {
            z_pows.push(z_pows[k - 1].matmul(&z));
            x_pows.push(x_pows[k - 1].matmul(&x));
        }
        let mut displacements = Vec::with_capacity(d * d);
        let mut states = Vec::with_capacity(d * d);
        for (a, za) in z_pows.iter().enumerate() {
            for (b, xb) in x_pows.iter().enumerate() {
                let phase = omega(d, -((half * a * b) as i64));
                let dab = za.matmul(xb).scale_complex(phase);
                states.push(dab.mul_vec(&fiducial));
                displacements.push(dab);
            }
        }
        Ok(CoherentFamily {
            d,
            half,
            fiducial,
            fourier,
            z,
            x,
            displacements,
            states,
        })
    }

    pub fn generic(d: usize) -> Result<Self> {
        Self::new(d, generic_fiducial(d))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// The inverse of 2 in `Z(d)`.
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn fiducial(&self) -> &[C64] {
        &self.fiducial
    }

    pub fn fourier(&self) -> &ComplexMatrix {
        &self.fourier
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn reduce(&self, (a, b): Label) -> Label {
        (a % self.d, b % self.d)
    }

    pub fn shift(&self, (a, b): Label, (k, l): Label) -> Label {
        ((a + k) % self.d, (b + l) % self.d)
    }

    pub fn displacement(&self, label: Label) -> &ComplexMatrix {
        let (a, b) = self.reduce(label);
        &self.displacements[a * self.d + b]
    }

    /// `|C; a, b> = D(a, b) f`.
    pub fn state(&self, label: Label) -> &[C64] {
        let (a, b) = self.reduce(label);
        &self.states[a * self.d + b]
    }

    /// Components `<X; n | C; a, b> = w(-2^{-1} a b + a n) f_{n - b}`.
    pub fn state_closed_form(&self, label: Label) -> Vec<C64> {
        let d = self.d as i64;
        let (a, b) = self.reduce(label);
        let (a, b, h) = (a as i64, b as i64, self.half as i64);
        (0..d)
            .map(|n| omega(self.d, -h * a * b + a * n) * self.fiducial[(n - b).rem_euclid(d) as usize])
            .collect()
    }

    /// `<C; a, b | C; c, e>` from the closed-form sum.
    pub fn overlap(&self, first: Label, second: Label) -> C64 {
        let d = self.d as i64;
        let (a, b) = self.reduce(first);
        let (c, e) = self.reduce(second);
        let (a, b, c, e, h) = (a as i64, b as i64, c as i64, e as i64, self.half as i64);
        let sum: C64 = (0..d)
            .map(|n| {
                self.fiducial[(n + e - b).rem_euclid(d) as usize].conj()
                    * self.fiducial[n as usize]
                    * omega(self.d, n * (c - a))
            })
            .sum();
        omega(self.d, h * (a * b + c * e) - a * e) * sum
    }

    /// `<C; a, b | C; c, e>` as a direct inner product.
    pub fn overlap_direct(&self, first: Label, second: Label) -> C64 {
        inner(self.state(first), self.state(second))
    }

    /// `P(a, b) = |C; a, b><C; a, b|`.
    pub fn projector(&self, label: Label) -> ComplexMatrix {
        ComplexMatrix::outer(self.state(label))
    }

    pub fn line(&self, label: Label, tol: &Tolerance) -> Subspace {
        let v = ComplexMatrix::from_columns(self.d, &[self.state(label).to_vec()]).expect("state has length d");
        Subspace::span(&v, tol)
    }

    /// `D(k, l) M D(k, l)^dagger`.
    pub fn conjugate(&self, shift: Label, m: &ComplexMatrix) -> ComplexMatrix {
        let dk = self.displacement(shift);
        dk.matmul(m).matmul(&dk.adjoint())
    }
}

/// A cumulative coherent projector `P(a1, b1; ...; ai, bi)` with its
/// Gram-Schmidt increments.
#[derive(Debug, Clone)]
pub struct CoherentAggregate<'a> {
    family: &'a CoherentFamily,
    labels: Vec<Label>,
    projector: ComplexMatrix,
    /// `varpi(a_k, b_k | a_1, b_1; ...; a_{k-1}, b_{k-1})` for `k >= 2`.
    increments: Vec<ComplexMatrix>,
}

impl<'a> CoherentAggregate<'a> {
    pub fn new(family: &'a CoherentFamily, first: Label) -> Self {
        CoherentAggregate {
            family,
            labels: vec![family.reduce(first)],
            projector: family.projector(first),
            increments: Vec::new(),
        }
    }

    pub fn from_labels(family: &'a CoherentFamily, labels: &[Label], tol: &Tolerance) -> Result<Self> {
        let (first, rest) = labels
            .split_first()
            .ok_or_else(|| Error::PreconditionViolated("aggregate needs at least one label".into()))?;
        rest.iter()
            .try_fold(Self::new(family, *first), |agg, &l| agg.extend(l, tol))
    }

    /// Adds one more coherent state:
    /// `varpi = P_perp P(a, b) P_perp / Tr[P_perp P(a, b)]`.
    pub fn extend(&self, label: Label, tol: &Tolerance) -> Result<Self> {
        let label = self.family.reduce(label);
        if let Some(&(a, b)) = self.labels.iter().find(|&&l| l == label) {
            return Err(Error::DuplicateLabel(a, b));
        }
        let d = self.family.dim();
        let perp = &ComplexMatrix::identity(d) - &self.projector;
        let p = self.family.projector(label);
        let denom = perp.matmul(&p).trace().re;
        if denom <= tol.rank_eps {
            return Err(Error::LinearlyDependentState(label.0, label.1));
        }
        let increment = perp.matmul(&p).matmul(&perp).scale(1.0 / denom);
        let mut next = self.clone();
        next.projector = &self.projector + &increment;
        next.labels.push(label);
        next.increments.push(increment);
        Ok(next)
    }

    pub fn family(&self) -> &'a CoherentFamily {
        self.family
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }

    pub fn increments(&self) -> &[ComplexMatrix] {
        &self.increments
    }

    /// The increment contributed by the last label; `P(a1, b1)` for one label.
    pub fn last_increment(&self) -> ComplexMatrix {
        match self.increments.last() {
            Some(m) => m.clone(),
            None => self.family.projector(self.labels[0]),
        }
    }

    pub fn shifted(&self, shift: Label, tol: &Tolerance) -> Result<Self> {
        let labels: Vec<Label> = self.labels.iter().map(|&l| self.family.shift(l, shift)).collect();
        Self::from_labels(self.family, &labels, tol)
    }

    pub fn lines(&self, tol: &Tolerance) -> Vec<Subspace> {
        self.labels.iter().map(|&l| self.family.line(l, tol)).collect()
    }

    /// `D(a1, b1; ...; ai, bi)` over the label lines; needs two or more labels.
    pub fn mobius(&self, tol: &Tolerance) -> Result<ComplexMatrix> {
        Ok(mobius(&self.lines(tol), tol)?.matrix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceResiduals {
    pub projector: f64,
    /// Worst increment.
    pub increments: f64,
    /// `None` for a single label.
    pub mobius: Option<f64>,
}

impl CovarianceResiduals {
    pub fn max(&self) -> f64 {
        self.projector.max(self.increments).max(self.mobius.unwrap_or(0.0))
    }
}

/// Conjugating by `D(k, l)` against rebuilding from shifted labels.
pub fn check_displacement_covariance(
    agg: &CoherentAggregate<'_>,
    shift: Label,
    tol: &Tolerance,
) -> Result<CovarianceResiduals> {
    let family = agg.family();
    let moved = agg.shifted(shift, tol)?;
    let projector = family.conjugate(shift, agg.projector()).distance(moved.projector());
    let increments = agg
        .increments()
        .iter()
        .zip(moved.increments())
        .map(|(w, w2)| family.conjugate(shift, w).distance(w2))
        .fold(0.0, f64::max);
    let mobius = if agg.labels().len() >= 2 {
        Some(family.conjugate(shift, &agg.mobius(tol)?).distance(&moved.mobius(tol)?))
    } else {
        None
    };
    Ok(CovarianceResiduals {
        projector,
        increments,
        mobius,
    })
}

/// Residuals of the resolutions of the identity over all `d^2` shifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolutionReport {
    pub count: usize,
    /// `|(1/(i d)) sum P(shifted) - I|_F`.
    pub projectors: f64,
    /// `|(1/d) sum varpi(shifted) - I|_F`.
    pub increments: f64,
    /// `|(1/i) sum varpi(shifted) - I|_F`, the `1/i` normalization; equals
    /// `|d/i - 1| sqrt(d)` whenever the `1/d` form holds.
    pub increments_over_count: f64,
    /// `|sum D(shifted)|_F`.
    pub mobius: f64,
    /// `|(1/d) sum D Theta D^dagger - Tr(Theta) I|_F` for the supplied `Theta`.
    pub trace_relation: f64,
}

impl ResolutionReport {
    pub fn checks(&self, tol: f64) -> Vec<IdentityCheck> {
        vec![
            IdentityCheck::new("(1/(i d)) sum P = I", self.projectors, tol),
            IdentityCheck::new("(1/d) sum varpi = I", self.increments, tol),
            IdentityCheck::new("(1/i) sum varpi = I [diagnostic]", self.increments_over_count, tol),
            IdentityCheck::new("sum D = 0", self.mobius, tol),
            IdentityCheck::new("(1/d) sum D T D^+ = Tr(T) I", self.trace_relation, tol),
        ]
    }
}

pub fn check_resolutions(
    family: &CoherentFamily,
    labels: &[Label],
    theta: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<ResolutionReport> {
    let d = family.dim();
    let i = labels.len();
    if !(2..=d).contains(&i) {
        return Err(Error::PreconditionViolated(format!(
            "need 2 <= i <= {d} labels, got {i}"
        )));
    }
    if theta.rows() != d || !theta.is_square() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: theta.rows(),
        });
    }
    let mut sum_p = ComplexMatrix::zeros(d, d);
    let mut sum_w = ComplexMatrix::zeros(d, d);
    let mut sum_d = ComplexMatrix::zeros(d, d);
    let mut sum_t = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        for l in 0..d {
            let shifted: Vec<Label> = labels.iter().map(|&x| family.shift(x, (k, l))).collect();
            let agg = CoherentAggregate::from_labels(family, &shifted, tol).map_err(|e| match e {
                Error::LinearlyDependentState(..) => Error::ShiftDependenceFailure(k, l),
                other => other,
            })?;
            sum_p += agg.projector();
            sum_w += &agg.last_increment();
            sum_d += &agg.mobius(tol)?;
            sum_t += &family.conjugate((k, l), theta);
        }
    }
    let id = ComplexMatrix::identity(d);
    let df = d as f64;
    Ok(ResolutionReport {
        count: i,
        projectors: sum_p.scale(1.0 / (i as f64 * df)).distance(&id),
        increments: sum_w.scale(1.0 / df).distance(&id),
        increments_over_count: sum_w.scale(1.0 / i as f64).distance(&id),
        mobius: sum_d.frobenius_norm(),
        trace_relation: sum_t.scale(1.0 / df).distance(&id.scale_complex(theta.trace())),
    })
}

/// `rho = P(a1, b1; ...; an, bn) / n`.
pub fn mixed_coherent_state(agg: &CoherentAggregate<'_>, tol: &Tolerance) -> Result<DensityMatrix> {
    let n = agg.labels().len() as f64;
    DensityMatrix::new(agg.projector().scale(1.0 / n).hermitian_part(), tol)
}

/// `-Tr(rho log rho)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(hermitian_eig(rho.matrix())?
        .eigenvalues
        .into_iter()
        .filter(|&l| l > 1e-15)
        .map(|l| -l * l.ln())
        .sum())
}

/// A spread of distinct labels: `(0,0), (1,0), (0,1), (1,1), (2,0), ...`.
pub fn default_labels(d: usize, count: usize) -> Vec<Label> {
    let mut out = Vec::with_capacity(count);
    'outer: for s in 0..2 * d {
        for a in 0..=s.min(d - 1) {
            let b = s - a;
            if b < d {
                out.push((a, b));
                if out.len() == count {
                    break 'outer;
                }
            }
        }
    }
    out
}
