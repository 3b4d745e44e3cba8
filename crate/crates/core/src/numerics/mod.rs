//! Foundational numerics shared by every analytic path: unit conversions,
//! the error-function family, adaptive quadrature, scalar minimization, and
//! bisection root-finding.

mod quad;
mod solve;
mod special;
mod units;

pub use quad::integrate;
pub use solve::{bisect, minimize_scalar};
pub use special::{erf, erfc, erfinv, q_function};
pub use units::{db_to_linear, linear_to_db, LN_10_OVER_10};

use crate::{Error, Result};

/// Explicit convergence control for the iterative routines.
///
/// Carried by value everywhere so there is no hidden global tolerance state.
/// `max_iter` bounds recursion depth for [`integrate`] and iteration count for
/// [`minimize_scalar`] and [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Tolerance {
    /// Build a tolerance, requiring `abs_tol + rel_tol > 0` and `max_iter >= 1`.
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !abs_tol.is_finite() || !rel_tol.is_finite() || abs_tol < 0.0 || rel_tol < 0.0 {
            return Err(Error::domain(
                "Tolerance::new",
                format!("tolerances must be finite and non-negative, got abs={abs_tol}, rel={rel_tol}"),
            ));
        }
        if abs_tol + rel_tol <= 0.0 {
            return Err(Error::domain(
                "Tolerance::new",
                "abs_tol + rel_tol must be positive",
            ));
        }
        if max_iter == 0 {
            return Err(Error::domain("Tolerance::new", "max_iter must be >= 1"));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
        })
    }

    /// Width at which an interval around `x` counts as converged.
    pub(crate) fn interval(&self, x: f64) -> f64 {
        self.abs_tol + self.rel_tol * x.abs()
    }
}

impl Default for Tolerance {
    /// `abs_tol = 1e-12`, `rel_tol = 1e-10`, `max_iter = 60`.
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_iter: 60,
        }
    }
}
