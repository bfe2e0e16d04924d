//! Dense complex linear algebra: matrices, the Hermitian eigensolver and
//! tolerance-driven range/kernel extraction.

mod eigen;
mod matrix;
mod range;

pub use eigen::{hermitian_eig, EigenDecomposition};
pub use matrix::{inner, norm, ComplexMatrix, C64};
pub use range::{kernel, numerical_rank, orthonormal_range};

use crate::error::{Error, Result};

/// Environment variable that overrides [`Tolerance::identity_eps`].
pub const EPS_ENV_VAR: &str = "QLATTICE_EPS";

/// Thresholds for rank decisions and for operator-identity residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Eigenvalue / residual-norm magnitude below which a direction is dropped.
    pub rank_eps: f64,
    /// Frobenius residual below which two operators are considered equal.
    pub identity_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_eps: 1e-9,
            identity_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rank_eps: f64, identity_eps: f64) -> Result<Self> {
        for (name, v) in [("rank_eps", rank_eps), ("identity_eps", identity_eps)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidConfig(format!("{name} = {v} outside (0, 1)")));
            }
        }
        Ok(Tolerance { rank_eps, identity_eps })
    }

    /// Defaults, with `identity_eps` taken from `QLATTICE_EPS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(EPS_ENV_VAR) {
            Ok(raw) => {
                let eps: f64 = raw.trim().parse().map_err(|e| Error::parse(EPS_ENV_VAR, e))?;
                Tolerance::new(Tolerance::default().rank_eps, eps)
            }
            Err(_) => Ok(Tolerance::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::new(1e-9, 1e-9).is_ok());
        assert!(Tolerance::new(0.0, 1e-9).is_err());
        assert!(Tolerance::new(1e-9, 1.0).is_err());
        assert!(Tolerance::new(f64::NAN, 1e-9).is_err());
    }
}
