//! Crate-wide error type.

/// Errors produced by the numerical and statistical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation.
    #[error("{context}: {message}")]
    Domain {
        /// Name of the failing operation.
        context: &'static str,
        /// What was wrong with the input.
        message: String,
    },

    /// A bracketing method was called without a valid bracket.
    #[error("{context}: f does not bracket target {target} on [{lo}, {hi}] (f(lo)={f_lo}, f(hi)={f_hi})")]
    NoBracket {
        context: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
        target: f64,
    },

    /// An iterative method ran out of iterations; `best` carries the last
    /// (unconverged) estimate.
    #[error("{context}: no convergence after {iterations} iterations (best estimate {best:e})")]
    Convergence {
        context: &'static str,
        iterations: usize,
        best: f64,
    },

    /// A user-supplied function returned NaN or an infinity.
    #[error("{context}: evaluation returned a non-finite value at {at:e}")]
    NonFinite { context: &'static str, at: f64 },
}

impl Error {
    pub(crate) fn domain(context: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            context,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shared validation for covertness requirement levels.
pub(crate) fn check_epsilon(context: &'static str, epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(
            context,
            format!("epsilon must lie strictly in (0, 1), got {epsilon}"),
        ));
    }
    Ok(())
}
