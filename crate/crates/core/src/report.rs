use serde::Serialize;

/// One row of an identity report: a named residual against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        IdentityCheck {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

pub fn all_pass(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Fixed-width text table, one check per line.
pub fn render_checks(checks: &[IdentityCheck]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{:<width$}  residual {:>10.3e}  tol {:>8.1e}  {}\n",
            c.name,
            c.residual,
            c.tolerance,
            if c.pass { "PASS" } else { "FAIL" },
        ));
    }
    out
}
