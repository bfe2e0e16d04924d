//! Report-producing commands behind the `qlattice` binary.
//!
//! Each command returns a [`CommandOutput`]: the rendered text plus whether
//! every check passed. The binary prints the text and maps `success` to the
//! exit status.

use std::fmt::Write as _;
use std::path::Path;

use crate::coherent::{
    check_displacement_covariance, check_resolutions, fiducial_from_json, mixed_coherent_state, von_neumann_entropy,
    CoherentAggregate, CoherentFamily, Label,
};
use crate::distributivity::{check_pi_decomposition, check_varpi_mobius_links, pi_deviation, varpi1, varpi2};
use crate::error::{Error, Result};
use crate::fixtures::{three_lines, uniform_density};
use crate::lattice::{join, meet, orthocomplement, Subspace};
use crate::mobius::{check_commutator_identity_2, check_triple_identities, mobius, mobius_dual, mobius_pair};
use crate::modular::{
    check_p2_decomposition, check_p3_projective, projective_map, random_chain_sample, random_projective_sample,
    spectral_check_p1, transpose_down, transpose_up, P1_ZERO_THRESHOLD,
};
use crate::numerics::{hermitian_eig, ComplexMatrix, Tolerance};
use crate::observables::{check_moment_relations, classify_mean, expectation, stddev, DensityMatrix};
use crate::report::{all_pass, render_checks, IdentityCheck};
use crate::rng::{gaussian_matrix, TrialRng};

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub success: bool,
}

fn fmt_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m[(i, j)];
                if z.im.abs() < 5e-4 {
                    format!("{:>7.3}", z.re)
                } else {
                    format!("{:>7.3}{:+.3}i", z.re, z.im)
                }
            })
            .collect();
        out.push_str("  ");
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// repro

pub const GOLDEN_TOLERANCE: f64 = 5e-3;
/// `varpi2(H1, H2 | H3)` and `pi(H3; H1)` must agree to this precision.
pub const SAME_OPERATOR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum GoldenValue {
    Matrix(ComplexMatrix),
    Scalar(f64),
}

impl GoldenValue {
    fn deviation(&self, other: &GoldenValue) -> f64 {
        match (self, other) {
            (GoldenValue::Matrix(a), GoldenValue::Matrix(b)) => (a - b).max_abs(),
            (GoldenValue::Scalar(a), GoldenValue::Scalar(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRecord {
    pub name: &'static str,
    pub expected: GoldenValue,
    pub tolerance: f64,
    pub source: &'static str,
}

fn golden_matrix(name: &'static str, source: &'static str, rows: [[f64; 3]; 3]) -> GoldenRecord {
    let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    GoldenRecord {
        name,
        expected: GoldenValue::Matrix(ComplexMatrix::from_real_rows(&refs)),
        tolerance: GOLDEN_TOLERANCE,
        source,
    }
}

fn golden_scalar(name: &'static str, value: f64) -> GoldenRecord {
    GoldenRecord {
        name,
        expected: GoldenValue::Scalar(value),
        tolerance: GOLDEN_TOLERANCE,
        source: "three-line example, moments in the uniform superposition",
    }
}

/// Published three-decimal values for the three-line example.
pub fn golden_records() -> Vec<GoldenRecord> {
    const PAIRS: &str = "three-line example, pair operators";
    const TRIPLE: &str = "three-line example, triple operators";
    const DISTRIB: &str = "three-line example, distributivity projectors";
    vec![
        golden_matrix(
            "D(H1,H2)",
            PAIRS,
            [[0.019, 0.142, -0.480], [0.142, 0.403, -0.714], [-0.480, -0.714, -0.422]],
        ),
        golden_matrix(
            "D(H1,H3)",
            PAIRS,
            [[0.055, 0.200, -0.471], [0.200, 0.490, -0.671], [-0.471, -0.671, -0.545]],
        ),
        golden_matrix(
            "D(H2,H3)",
            PAIRS,
            [
                [-0.014, 0.090, -0.506],
                [0.090, 0.330, -0.783],
                [-0.506, -0.783, -0.316],
            ],
        ),
        golden_matrix(
            "D(H1,H2,H3)",
            TRIPLE,
            [[-0.054, -0.210, 0.457], [-0.210, -0.539, 0.668], [0.457, 0.668, 0.593]],
        ),
        golden_matrix(
            "D~(H1,H2,H3)",
            TRIPLE,
            [[-0.006, -0.222, 1.000], [-0.222, -0.685, 1.499], [1.000, 1.499, 0.691]],
        ),
        golden_matrix(
            "varpi1(H1,H2|H3)",
            DISTRIB,
            [[0.145, 0.290, -0.199], [0.290, 0.580, -0.399], [-0.199, -0.399, 0.275]],
        ),
        golden_matrix(
            "varpi2(H1,H2|H3)",
            DISTRIB,
            [[0.125, 0.142, 0.298], [0.142, 0.163, 0.340], [0.298, 0.340, 0.712]],
        ),
        golden_matrix(
            "pi(H3;H1)",
            DISTRIB,
            [[0.125, 0.142, 0.298], [0.142, 0.163, 0.340], [0.298, 0.340, 0.712]],
        ),
        golden_scalar("E[D(H1,H2)]", -0.701),
        golden_scalar("Delta[D(H1,H2)]", 0.651),
        golden_scalar("E[D(H1,H2,H3)]", 0.610),
        golden_scalar("Delta[D(H1,H2,H3)]", 0.792),
        golden_scalar("E[varpi1]", 0.127),
        golden_scalar("Delta[varpi1]", 0.334),
        golden_scalar("E[varpi2]", 0.854),
        golden_scalar("E[pi]", 0.854),
        golden_scalar("Delta[varpi2]", 0.353),
        golden_scalar("Delta[pi]", 0.353),
    ]
}

/// Computes every quantity named in [`golden_records`].
pub fn compute_example(tol: &Tolerance) -> Result<Vec<(&'static str, GoldenValue)>> {
    let [h1, h2, h3] = three_lines(tol);
    let rho = DensityMatrix::new(uniform_density(), tol)?;
    let args = [h1.clone(), h2.clone(), h3.clone()];
    let d12 = mobius_pair(&h1, &h2, tol)?;
    let d123 = mobius(&args, tol)?.matrix;
    let w1 = varpi1(&h1, &h2, &h3, tol)?.matrix;
    let w2 = varpi2(&h1, &h2, &h3, tol)?.matrix;
    let pi = pi_deviation(&h3, &h1, tol)?.matrix;
    let e = |m: &ComplexMatrix| expectation(&rho, m).map(GoldenValue::Scalar);
    let s = |m: &ComplexMatrix| stddev(&rho, m).map(GoldenValue::Scalar);
    Ok(vec![
        ("D(H1,H2)", GoldenValue::Matrix(d12.clone())),
        ("D(H1,H3)", GoldenValue::Matrix(mobius_pair(&h1, &h3, tol)?)),
        ("D(H2,H3)", GoldenValue::Matrix(mobius_pair(&h2, &h3, tol)?)),
        ("D(H1,H2,H3)", GoldenValue::Matrix(d123.clone())),
        ("D~(H1,H2,H3)", GoldenValue::Matrix(mobius_dual(&args, tol)?.matrix)),
        ("varpi1(H1,H2|H3)", GoldenValue::Matrix(w1.clone())),
        ("varpi2(H1,H2|H3)", GoldenValue::Matrix(w2.clone())),
        ("pi(H3;H1)", GoldenValue::Matrix(pi.clone())),
        ("E[D(H1,H2)]", e(&d12)?),
        ("Delta[D(H1,H2)]", s(&d12)?),
        ("E[D(H1,H2,H3)]", e(&d123)?),
        ("Delta[D(H1,H2,H3)]", s(&d123)?),
        ("E[varpi1]", e(&w1)?),
        ("Delta[varpi1]", s(&w1)?),
        ("E[varpi2]", e(&w2)?),
        ("E[pi]", e(&pi)?),
        ("Delta[varpi2]", s(&w2)?),
        ("Delta[pi]", s(&pi)?),
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenOutcome {
    pub name: String,
    pub computed: GoldenValue,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproReport {
    pub outcomes: Vec<GoldenOutcome>,
}

impl ReproReport {
    pub fn success(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.outcomes
            .iter()
            .filter(|o| !o.pass)
            .map(|o| o.name.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&GoldenOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

pub fn run_repro(tol: &Tolerance) -> Result<ReproReport> {
    let computed = compute_example(tol)?;
    let mut outcomes = Vec::new();
    for rec in golden_records() {
        let value = computed
            .iter()
            .find(|(n, _)| *n == rec.name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::InternalInconsistency(format!("no computed value for {}", rec.name)))?;
        let deviation = rec.expected.deviation(&value);
        outcomes.push(GoldenOutcome {
            name: rec.name.to_string(),
            computed: value,
            deviation,
            tolerance: rec.tolerance,
            pass: deviation <= rec.tolerance,
            source: rec.source.to_string(),
        });
    }
    let w2 = computed.iter().find(|(n, _)| *n == "varpi2(H1,H2|H3)").map(|(_, v)| v);
    let pi = computed.iter().find(|(n, _)| *n == "pi(H3;H1)").map(|(_, v)| v);
    if let (Some(w2), Some(pi)) = (w2, pi) {
        let deviation = w2.deviation(pi);
        outcomes.push(GoldenOutcome {
            name: "varpi2(H1,H2|H3) == pi(H3;H1)".into(),
            computed: GoldenValue::Scalar(deviation),
            deviation,
            tolerance: SAME_OPERATOR_TOLERANCE,
            pass: deviation <= SAME_OPERATOR_TOLERANCE,
            source: "three-line example, identity of the two projectors".into(),
        });
    }
    Ok(ReproReport { outcomes })
}

pub fn cmd_repro(tol: &Tolerance) -> Result<CommandOutput> {
    let report = run_repro(tol)?;
    let mut text = String::new();
    for o in &report.outcomes {
        if let GoldenValue::Matrix(m) = &o.computed {
            let _ = writeln!(text, "{}:", o.name);
            text.push_str(&fmt_matrix(m));
        }
    }
    text.push('\n');
    let width = report.outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    for o in &report.outcomes {
        let value = match &o.computed {
            GoldenValue::Scalar(x) if o.tolerance == GOLDEN_TOLERANCE => format!("{x:>7.3}"),
            GoldenValue::Scalar(_) | GoldenValue::Matrix(_) => "       ".to_string(),
        };
        let _ = writeln!(
            text,
            "{:<width$}  {value}  max dev {:>9.3e}  tol {:>7.1e}  {}",
            o.name,
            o.deviation,
            o.tolerance,
            if o.pass { "PASS" } else { "FAIL" },
        );
    }
    let failing = report.failing();
    if failing.is_empty() {
        let _ = writeln!(text, "\nall {} records reproduced", report.outcomes.len());
    } else {
        let _ = writeln!(text, "\nfailing: {}", failing.join(", "));
    }
    Ok(CommandOutput {
        text,
        success: report.success(),
    })
}

// ---------------------------------------------------------------------------
// sweep

/// Names accepted by `sweep --check`.
pub const CHECKS: [&str; 11] = [
    "e3",
    "triple",
    "varpi-links",
    "pi-decomp",
    "moments",
    "modularity",
    "p1",
    "p2",
    "p3",
    "transpose-roundtrip",
    "demorgan",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub dimension: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<String>,
    pub tolerance: Tolerance,
}

impl SweepConfig {
    /// `checks` is a comma-separated list of names from [`CHECKS`], or `all`.
    pub fn new(dimension: usize, trials: usize, seed: u64, checks: &str, tolerance: Tolerance) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if dimension < 2 {
            return Err(Error::InvalidConfig(format!("dimension {dimension} below 2")));
        }
        let checks: Vec<String> = if checks.trim() == "all" {
            CHECKS.iter().map(|s| s.to_string()).collect()
        } else {
            checks
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        };
        if checks.is_empty() {
            return Err(Error::InvalidConfig("no checks selected".into()));
        }
        if let Some(bad) = checks.iter().find(|c| !CHECKS.contains(&c.as_str())) {
            return Err(Error::UnknownCheck(bad.clone()));
        }
        Ok(SweepConfig {
            dimension,
            trials,
            seed,
            checks,
            tolerance,
        })
    }
}

/// One trial's result: the residual and whether it passes its own criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: String,
    pub trials: usize,
    pub max_residual: f64,
    pub worst_trial: usize,
    pub tolerance: f64,
    pub failures: usize,
}

impl CheckSummary {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub dimension: usize,
    pub trials: usize,
    pub seed: u64,
    pub summaries: Vec<CheckSummary>,
}

impl SweepReport {
    pub fn success(&self) -> bool {
        self.summaries.iter().all(|s| s.pass())
    }

    pub fn render(&self) -> String {
        let mut out = format!("sweep d={} trials={} seed={}\n", self.dimension, self.trials, self.seed);
        for s in &self.summaries {
            let _ = writeln!(
                out,
                "{:<20} max residual {:>12.6e}  tol {:>7.1e}  worst trial {:>5}  failures {:>4}  {}",
                s.name,
                s.max_residual,
                s.tolerance,
                s.worst_trial,
                s.failures,
                if s.pass() { "PASS" } else { "FAIL" },
            );
        }
        out
    }
}

fn random_rank(rng: &mut TrialRng, d: usize) -> usize {
    rng.range(1, d - 1)
}

fn random_subspace(rng: &mut TrialRng, d: usize, tol: &Tolerance) -> Subspace {
    let r = random_rank(rng, d);
    Subspace::random(rng, d, r, tol)
}

fn within_tol(residual: f64, tol: f64) -> TrialOutcome {
    TrialOutcome {
        residual,
        pass: residual <= tol,
    }
}

/// Residual tolerance used by `check`.
pub fn check_tolerance(check: &str, tol: &Tolerance) -> f64 {
    if check == "p1" {
        P1_ZERO_THRESHOLD
    } else {
        tol.identity_eps
    }
}

/// Runs one trial of `check` on its own random stream.
pub fn run_trial(check: &str, d: usize, rng: &mut TrialRng, tol: &Tolerance) -> Result<TrialOutcome> {
    let eps = check_tolerance(check, tol);
    let residual = match check {
        "e3" => {
            let (a, b) = (random_subspace(rng, d, tol), random_subspace(rng, d, tol));
            check_commutator_identity_2(&a, &b, tol)?
        }
        "triple" => {
            let b = random_subspace(rng, d, tol);
            // every other draw nests H1 inside H2
            let a = if rng.unit() < 0.5 {
                let r = rng.range(0, b.rank());
                b.random_within(rng, r, tol)
            } else {
                random_subspace(rng, d, tol)
            };
            let c = random_subspace(rng, d, tol);
            check_triple_identities(&a, &b, &c, tol)?.max()
        }
        "varpi-links" => {
            let (a, b, c) = (
                random_subspace(rng, d, tol),
                random_subspace(rng, d, tol),
                random_subspace(rng, d, tol),
            );
            check_varpi_mobius_links(&a, &b, &c, tol)?.max()
        }
        "pi-decomp" => {
            let (h0, h1) = (random_subspace(rng, d, tol), random_subspace(rng, d, tol));
            check_pi_decomposition(&h0, &h1, tol)?
        }
        "moments" => {
            let rho = DensityMatrix::random(rng, d);
            let (a, b) = (random_subspace(rng, d, tol), random_subspace(rng, d, tol));
            check_moment_relations(&rho, &a, &b, tol)?.max()
        }
        "modularity" => {
            let h3 = random_subspace(rng, d, tol);
            let r = rng.range(0, h3.rank());
            let h1 = h3.random_within(rng, r, tol);
            let h2 = random_subspace(rng, d, tol);
            let lhs = join(&h1, &meet(&h2, &h3, tol)?, tol)?;
            let rhs = meet(&join(&h1, &h2, tol)?, &h3, tol)?;
            lhs.distance(&rhs)
        }
        "p1" => {
            let (a, b) = (random_subspace(rng, d, tol), random_subspace(rng, d, tol));
            let r = spectral_check_p1(&a, &b, tol)?;
            let mut mags: Vec<f64> = r.eigenvalues.iter().map(|l| l.abs()).collect();
            mags.sort_by(f64::total_cmp);
            let kth = if r.required_zeros == 0 {
                0.0
            } else {
                mags[r.required_zeros - 1]
            };
            return Ok(TrialOutcome {
                residual: kth.max(r.eigenvalue_sum.abs()),
                pass: r.pass,
            });
        }
        "p2" => {
            let s = random_chain_sample(rng, d, tol);
            check_p2_decomposition(&s.h1, &s.h2, &s.h, tol)?.max()
        }
        "p3" => {
            let s = random_projective_sample(rng, d, tol);
            check_p3_projective(&s.h1p, &s.h2, &s.h3p, Some(&s.h), tol)?.max()
        }
        "transpose-roundtrip" => {
            let s = random_chain_sample(rng, d, tol);
            let up = transpose_up(&s.h, &s.h1, &s.h2, tol)?;
            let r1 = transpose_down(&up, &s.h1, &s.h2, tol)?.distance(&s.h);
            let p = random_projective_sample(rng, d, tol);
            let image = projective_map(&p.h, &p.h2, &p.h3p, tol)?;
            let r2 = projective_map(&image, &p.h2, &p.h1p, tol)?.distance(&p.h);
            r1.max(r2)
        }
        "demorgan" => {
            let (a, b) = (random_subspace(rng, d, tol), random_subspace(rng, d, tol));
            let (ca, cb) = (orthocomplement(&a, tol), orthocomplement(&b, tol));
            let r1 = orthocomplement(&meet(&a, &b, tol)?, tol).distance(&join(&ca, &cb, tol)?);
            let r2 = orthocomplement(&join(&a, &b, tol)?, tol).distance(&meet(&ca, &cb, tol)?);
            r1.max(r2)
        }
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    Ok(within_tol(residual, eps))
}

/// Stream key of `(check, trial)`: every check draws from its own family.
fn trial_rng(seed: u64, check_index: usize, trial: usize) -> TrialRng {
    TrialRng::stream(seed.wrapping_add((check_index as u64) << 32), trial as u64)
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut summaries = Vec::new();
    for check in &config.checks {
        let index = CHECKS
            .iter()
            .position(|c| c == check)
            .ok_or_else(|| Error::UnknownCheck(check.clone()))?;
        let mut summary = CheckSummary {
            name: check.clone(),
            trials: config.trials,
            max_residual: 0.0,
            worst_trial: 0,
            tolerance: check_tolerance(check, &config.tolerance),
            failures: 0,
        };
        for trial in 0..config.trials {
            let mut rng = trial_rng(config.seed, index, trial);
            let outcome = run_trial(check, config.dimension, &mut rng, &config.tolerance)?;
            if !outcome.pass {
                summary.failures += 1;
            }
            if outcome.residual > summary.max_residual || !outcome.residual.is_finite() {
                summary.max_residual = outcome.residual;
                summary.worst_trial = trial;
            }
        }
        summaries.push(summary);
    }
    Ok(SweepReport {
        dimension: config.dimension,
        trials: config.trials,
        seed: config.seed,
        summaries,
    })
}

pub fn cmd_sweep(config: &SweepConfig) -> Result<CommandOutput> {
    let report = run_sweep(config)?;
    let mut text = report.render();
    for s in report.summaries.iter().filter(|s| !s.pass()) {
        let _ = writeln!(
            text,
            "replay: --check {} --seed {} (worst trial {})",
            s.name, config.seed, s.worst_trial
        );
    }
    Ok(CommandOutput {
        text,
        success: report.success(),
    })
}

// ---------------------------------------------------------------------------
// coherent

/// Parses `"a1,b1;a2,b2;..."`.
pub fn parse_labels(s: &str) -> Result<Vec<Label>> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(parse_pair).collect()
}

/// Parses `"k,l"`.
pub fn parse_pair(s: &str) -> Result<Label> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::parse("label", format!("expected `a,b`, got `{s}`")));
    }
    let a = parts[0].parse().map_err(|e| Error::parse("label", e))?;
    let b = parts[1].parse().map_err(|e| Error::parse("label", e))?;
    Ok((a, b))
}

pub enum FiducialSource<'a> {
    Generic,
    File(&'a Path),
}

impl<'a> FiducialSource<'a> {
    pub fn from_arg(arg: &'a str) -> Self {
        if arg == "generic" {
            FiducialSource::Generic
        } else {
            FiducialSource::File(Path::new(arg))
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e))
}

/// Seed of the fixed test operator used for the trace relation.
const TRACE_RELATION_SEED: u64 = 0;

pub fn cmd_coherent(
    d: usize,
    fiducial: FiducialSource<'_>,
    labels: &[Label],
    shift: Option<Label>,
    tol: &Tolerance,
) -> Result<CommandOutput> {
    let family = match fiducial {
        FiducialSource::Generic => CoherentFamily::generic(d)?,
        FiducialSource::File(path) => CoherentFamily::new(d, fiducial_from_json(&read_file(path)?)?)?,
    };
    if labels.is_empty() {
        return Err(Error::PreconditionViolated("no labels given".into()));
    }
    let agg = CoherentAggregate::from_labels(&family, labels, tol)?;
    let mut text = String::new();
    let mut success = true;
    let _ = writeln!(text, "d = {d}, 2^-1 = {}, labels {:?}", family.half(), agg.labels());
    let _ = writeln!(text, "Tr P = {:.6}", agg.projector().trace().re);
    for (k, w) in agg.increments().iter().enumerate() {
        let _ = writeln!(text, "Tr varpi_{} = {:.6}", k + 2, w.trace().re);
    }
    let _ = writeln!(text, "P =");
    text.push_str(&fmt_matrix(agg.projector()));

    let shift = shift.unwrap_or((1, 1));
    let cov = check_displacement_covariance(&agg, shift, tol)?;
    let _ = writeln!(text, "\ncovariance under D{shift:?}:");
    let mut checks = vec![
        IdentityCheck::new("projector", cov.projector, tol.identity_eps),
        IdentityCheck::new("increments", cov.increments, tol.identity_eps),
    ];
    if let Some(m) = cov.mobius {
        checks.push(IdentityCheck::new("Mobius operator", m, tol.identity_eps));
    }
    success &= all_pass(&checks);
    text.push_str(&render_checks(&checks));

    if (2..=d).contains(&labels.len()) {
        let theta = gaussian_matrix(&mut TrialRng::new(TRACE_RELATION_SEED), d, d);
        let res = check_resolutions(&family, agg.labels(), &theta, tol)?;
        let checks = res.checks(tol.identity_eps);
        let _ = writeln!(text, "\nresolutions of the identity over all {} shifts:", d * d);
        text.push_str(&render_checks(&checks));
        let _ = writeln!(
            text,
            "note: the increment sum is normalized by 1/d, as forced by the trace relation with Tr varpi = 1;\n      \
             the 1/i normalization is shown for comparison and only holds when i = d"
        );
        success &= checks
            .iter()
            .filter(|c| !c.name.contains("[diagnostic]"))
            .all(|c| c.pass);
    }

    let rho = mixed_coherent_state(&agg, tol)?;
    let s = von_neumann_entropy(&rho)?;
    let n = labels.len() as f64;
    let _ = writeln!(
        text,
        "\nmixed state P/{}: entropy {:.9}, log n = {:.9}",
        labels.len(),
        s,
        n.ln()
    );
    success &= (s - n.ln()).abs() <= 1e-9;
    Ok(CommandOutput { text, success })
}

// ---------------------------------------------------------------------------
// mobius

pub fn load_subspace(path: &Path, tol: &Tolerance) -> Result<Subspace> {
    Subspace::from_json(&read_file(path)?, tol)
}

pub fn load_density(path: &Path, tol: &Tolerance) -> Result<DensityMatrix> {
    DensityMatrix::from_json(&read_file(path)?, tol)
}

pub fn cmd_mobius(files: &[&Path], dual: bool, rho: Option<&Path>, tol: &Tolerance) -> Result<CommandOutput> {
    let subspaces = files
        .iter()
        .map(|p| load_subspace(p, tol))
        .collect::<Result<Vec<_>>>()?;
    let op = if dual {
        mobius_dual(&subspaces, tol)?
    } else {
        mobius(&subspaces, tol)?
    };
    let eig = hermitian_eig(&op.matrix)?;
    let mut text = String::new();
    let _ = writeln!(text, "{}", op.matrix.to_json());
    let eigs: Vec<String> = eig.eigenvalues.iter().map(|l| format!("{l:.6}")).collect();
    let _ = writeln!(text, "eigenvalues: {}", eigs.join(" "));
    let _ = writeln!(text, "trace: {:.6}", op.trace());
    if let Some(path) = rho {
        let rho = load_density(path, tol)?;
        let mean = expectation(&rho, &op.matrix)?;
        let sd = stddev(&rho, &op.matrix)?;
        let _ = writeln!(text, "E = {mean:.3}");
        let _ = writeln!(text, "Delta = {sd:.3}");
        let _ = writeln!(text, "classification: {}", classify_mean(mean, tol));
    }
    Ok(CommandOutput { text, success: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn golden_records_are_well_formed() {
        let recs = golden_records();
        assert_eq!(
            recs.iter()
                .filter(|r| matches!(r.expected, GoldenValue::Matrix(_)))
                .count(),
            8
        );
        assert!(
            recs.iter()
                .filter(|r| matches!(r.expected, GoldenValue::Scalar(_)))
                .count()
                >= 8
        );
        assert!(recs.iter().all(|r| r.tolerance > 0.0));
    }

    #[test]
    fn repro_pair_entries() {
        let report = run_repro(&tol()).unwrap();
        let d23 = report.get("D(H2,H3)").unwrap();
        let GoldenValue::Matrix(m) = &d23.computed else {
            panic!()
        };
        assert!((m[(0, 0)].re + 0.014).abs() < 5e-3);
        assert!(report.get("varpi2(H1,H2|H3) == pi(H3;H1)").unwrap().pass);
    }

    #[test]
    fn sweep_config_validation() {
        assert!(matches!(
            SweepConfig::new(4, 0, 1, "e3", tol()),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            SweepConfig::new(1, 5, 1, "e3", tol()),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            SweepConfig::new(4, 5, 1, "e3,bogus", tol()),
            Err(Error::UnknownCheck(_))
        ));
        assert_eq!(
            SweepConfig::new(4, 5, 1, "all", tol()).unwrap().checks.len(),
            CHECKS.len()
        );
    }

    #[test]
    fn sweep_smoke() {
        for d in [2, 3, 5] {
            let cfg = SweepConfig::new(d, 5, 7, "all", tol()).unwrap();
            let report = run_sweep(&cfg).unwrap();
            assert!(report.success(), "{}", report.render());
        }
    }

    #[test]
    fn labels_parse() {
        assert_eq!(parse_labels("0,0; 1,2").unwrap(), vec![(0, 0), (1, 2)]);
        assert!(parse_labels("0,0,1").is_err());
        assert!(parse_pair("a,1").is_err());
    }

    #[test]
    fn coherent_command() {
        let out = cmd_coherent(3, FiducialSource::Generic, &[(0, 0), (1, 1)], None, &tol()).unwrap();
        assert!(out.success, "{}", out.text);
        assert!(matches!(
            cmd_coherent(4, FiducialSource::Generic, &[(0, 0)], None, &tol()),
            Err(Error::EvenDimension(4))
        ));
    }
}
