//! Received-power thresholds meeting a covertness requirement, and the covert
//! rates they allow.
//!
//! For each uncertainty model the largest received power at the warden with
//! `ξ̄ ≥ 1-ε` has a closed form: an explicit power law for the bounded
//! log-uniform model, and a two-branch inverse-error-function expression for
//! the Gaussian surrogate of the log-normal model. A fully numeric oracle
//! (window-placement search plus bisection on the power) backs both closed
//! forms and additionally handles the exact log-normal law, for which no
//! closed form exists.
//!
//! The transmit power budget `P_t = r_w^α · P_threshold` then caps the rate
//! to Bob at `R = ½ log₂(1 + P_t / (r_b^α σ_b²))` bits per (real-valued)
//! channel use.

use crate::error::check_epsilon;
use crate::metrics::optimal_gamma_numeric;
use crate::noise::{LogNormalModel, LogUniformModel, NoiseModel};
use crate::numerics::{bisect, erf, erfinv, Tolerance};
use crate::{Error, Result};

/// A covertness target: the detection-advantage level `ε` and, optionally,
/// a maximum covert outage `δ`. In the asymptotic regime the two constraints
/// `ξ̄ ≥ 1-a` and `p_out ≤ a` are equivalent.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CovertnessRequirement {
    epsilon: f64,
    delta: Option<f64>,
}

impl CovertnessRequirement {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_epsilon("CovertnessRequirement::new", epsilon)?;
        Ok(CovertnessRequirement {
            epsilon,
            delta: None,
        })
    }

    pub fn with_outage(epsilon: f64, delta: f64) -> Result<Self> {
        check_epsilon("CovertnessRequirement::with_outage", epsilon)?;
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain(
                "CovertnessRequirement::with_outage",
                format!("delta must lie strictly in (0, 1), got {delta}"),
            ));
        }
        Ok(CovertnessRequirement {
            epsilon,
            delta: Some(delta),
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> Option<f64> {
        self.delta
    }
}

/// Link geometry and Bob's noise power, fixing how a Willie-side power
/// threshold maps to a rate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LinkGeometry {
    r_b: f64,
    r_w: f64,
    alpha: f64,
    sigma_b_sq: f64,
}

impl LinkGeometry {
    pub fn new(r_b: f64, r_w: f64, alpha: f64, sigma_b_sq: f64) -> Result<Self> {
        for (name, v) in [
            ("r_b", r_b),
            ("r_w", r_w),
            ("alpha", alpha),
            ("sigma_b_sq", sigma_b_sq),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::domain(
                    "LinkGeometry::new",
                    format!("{name} must be finite and positive, got {v}"),
                ));
            }
        }
        Ok(LinkGeometry {
            r_b,
            r_w,
            alpha,
            sigma_b_sq,
        })
    }

    pub fn r_b(&self) -> f64 {
        self.r_b
    }

    pub fn r_w(&self) -> f64 {
        self.r_w
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sigma_b_sq(&self) -> f64 {
        self.sigma_b_sq
    }

    /// `r_w^α / r_b^α`, the factor converting a Willie-side power threshold
    /// into received power at Bob.
    fn path_gain_ratio(&self) -> f64 {
        (self.r_w / self.r_b).powf(self.alpha)
    }
}

/// Closed-form power threshold for the bounded log-uniform model:
/// `(ρ^(2ε-1) - 1/ρ) σ_n²`.
pub fn power_threshold_log_uniform(model: &LogUniformModel, epsilon: f64) -> Result<f64> {
    check_epsilon("power_threshold_log_uniform", epsilon)?;
    let rho = model.rho();
    Ok((rho.powf(2.0 * epsilon - 1.0) - 1.0 / rho) * model.sigma_n_sq())
}

/// The power at which the bounded model's worst-case measure stops reading 1:
/// `(ρ - 1/ρ) σ_n²`. This is the threshold earlier robust-statistics analyses
/// used for arbitrarily small `ε`, and it upper-bounds
/// [`power_threshold_log_uniform`] for every `ε < 1`.
pub fn worst_case_power_bound(model: &LogUniformModel) -> f64 {
    (model.rho() - 1.0 / model.rho()) * model.sigma_n_sq()
}

/// Closed-form (surrogate-based) power threshold for the log-normal model.
///
/// Two branches, continuous at `ε = erf(φ₁/√(2φ₂))/φ₃`:
/// `2√(2φ₂)·erf⁻¹(φ₃ε)` below it, `φ₁ - √(2φ₂)·erf⁻¹(erf(φ₁/√(2φ₂)) - 2φ₃ε)`
/// above. Errors when `ε` sits so close to 1 that the truncated surrogate's
/// inverse leaves its domain.
pub fn power_threshold_log_normal_approx(model: &LogNormalModel, epsilon: f64) -> Result<f64> {
    check_epsilon("power_threshold_log_normal_approx", epsilon)?;
    let p = model.gaussian_approx_params();
    let spread = (2.0 * p.phi2).sqrt();
    let erf_c = erf(p.phi1 / spread);
    let inv = |arg: f64| {
        erfinv(arg).map_err(|_| {
            Error::domain(
                "power_threshold_log_normal_approx",
                format!(
                    "epsilon={epsilon} drives the inverse-erf argument to {arg}; \
                     the truncated surrogate cannot represent this requirement"
                ),
            )
        })
    };
    if epsilon < erf_c / p.phi3 {
        Ok(2.0 * spread * inv(p.phi3 * epsilon)?)
    } else {
        Ok(p.phi1 - spread * inv(erf_c - 2.0 * p.phi3 * epsilon)?)
    }
}

/// Numeric threshold oracle: bisects the fully numeric `ξ̄(P_w)` (window
/// placement by grid search, exact model CDF) for the power where
/// `ξ̄ = 1-ε`.
///
/// The bracket starts at the support-covering bound for the bounded model;
/// for unbounded models it grows geometrically from the interquantile spread,
/// failing with a convergence error past 1000x that scale.
pub fn power_threshold_oracle(model: &NoiseModel, epsilon: f64) -> Result<f64> {
    check_epsilon("power_threshold_oracle", epsilon)?;
    let target = 1.0 - epsilon;
    let xi = |p: f64| optimal_gamma_numeric(model, p).1;
    let hi = match model {
        NoiseModel::LogUniform(m) => worst_case_power_bound(m),
        _ => {
            let scale = model.quantile(0.84)? - model.quantile(0.16)?;
            let cap = 1e3 * scale;
            let mut hi = scale;
            while xi(hi) >= target {
                hi *= 2.0;
                if hi > cap {
                    return Err(Error::Convergence {
                        context: "power_threshold_oracle",
                        iterations: 0,
                        best: hi,
                    });
                }
            }
            hi
        }
    };
    let tol = Tolerance {
        abs_tol: 0.0,
        rel_tol: 1e-9,
        max_iter: 200,
    };
    bisect(xi, 0.0, hi, target, &tol)
}

/// Covert rate allowed by a Willie-side power threshold:
/// `½ log₂(1 + r_w^α P / (r_b^α σ_b²))` bits per real channel use.
///
/// Zero exactly when the threshold is zero.
pub fn covert_rate(threshold_at_willie: f64, geometry: &LinkGeometry) -> f64 {
    let snr = geometry.path_gain_ratio() * threshold_at_willie / geometry.sigma_b_sq;
    0.5 * (1.0 + snr).log2()
}
