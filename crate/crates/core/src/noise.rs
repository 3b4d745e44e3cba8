//! A-priori distributions of the warden's receiver noise power.
//!
//! Two uncertainty models are supported, distinguished by whether the
//! uncertainty range is finite:
//!
//! * **Bounded (log-uniform)**: the noise power in dB is uniform on
//!   `[σ²_n,dB − ρ_dB, σ²_n,dB + ρ_dB]`, giving the density
//!   `f(x) = 1/(2 ln(ρ) x)` on `[σ_n²/ρ, ρ σ_n²]`.
//! * **Unbounded (log-normal)**: the dB offset from nominal is zero-mean
//!   normal with standard deviation `σ_Δ,dB`, giving a log-normal density on
//!   `x > 0`.
//!
//! The log-normal model additionally carries its small-uncertainty Gaussian
//! surrogate: a normal density with the log-normal's exact mean `φ₁` and
//! variance `φ₂`, truncated to `x > 0` and renormalized by `φ₃`. The surrogate
//! is what makes the power-threshold inversion tractable in closed form.
//!
//! Samplers are exact inverse-CDF (log-uniform, surrogate) or Box–Muller in
//! the dB domain (log-normal); no rejection is involved. All sampling is
//! driven by a caller-supplied ChaCha8 generator or a bare 64-bit seed.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::numerics::{erfc, erfinv, LN_10_OVER_10};
use crate::{Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const TAU: f64 = std::f64::consts::TAU;

/// Bounded noise-uncertainty model: noise power log-uniform on
/// `[σ_n²/ρ, ρ σ_n²]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LogUniformModel {
    sigma_n_sq: f64,
    rho: f64,
}

impl LogUniformModel {
    /// Build from the linear-scale nominal power `σ_n² > 0` and uncertainty
    /// size `ρ > 1`.
    pub fn new(sigma_n_sq: f64, rho: f64) -> Result<Self> {
        if !sigma_n_sq.is_finite() || sigma_n_sq <= 0.0 {
            return Err(Error::domain(
                "LogUniformModel::new",
                format!("nominal power must be finite and positive, got {sigma_n_sq}"),
            ));
        }
        if !rho.is_finite() || rho <= 1.0 {
            return Err(Error::domain(
                "LogUniformModel::new",
                format!("uncertainty size rho must exceed 1, got {rho}"),
            ));
        }
        Ok(LogUniformModel { sigma_n_sq, rho })
    }

    /// Build from dB-domain parameters: `σ²_n,dB` and `ρ_dB > 0`.
    pub fn from_db(sigma_n_db: f64, rho_db: f64) -> Result<Self> {
        if !sigma_n_db.is_finite() {
            return Err(Error::domain(
                "LogUniformModel::from_db",
                format!("nominal power must be finite, got {sigma_n_db} dB"),
            ));
        }
        if !rho_db.is_finite() || rho_db <= 0.0 {
            return Err(Error::domain(
                "LogUniformModel::from_db",
                format!("rho_db must be positive, got {rho_db}"),
            ));
        }
        Self::new(
            (LN_10_OVER_10 * sigma_n_db).exp(),
            (LN_10_OVER_10 * rho_db).exp(),
        )
    }

    pub fn sigma_n_sq(&self) -> f64 {
        self.sigma_n_sq
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn rho_db(&self) -> f64 {
        10.0 * self.rho.log10()
    }

    /// Support `[σ_n²/ρ, ρ σ_n²]`.
    pub fn support(&self) -> (f64, f64) {
        (self.sigma_n_sq / self.rho, self.rho * self.sigma_n_sq)
    }

    fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x < lo || x > hi {
            0.0
        } else {
            1.0 / (2.0 * self.rho.ln() * x)
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            0.0
        } else if x >= hi {
            1.0
        } else {
            ((self.rho * x / self.sigma_n_sq).ln() / (2.0 * self.rho.ln())).clamp(0.0, 1.0)
        }
    }

    fn quantile(&self, p: f64) -> f64 {
        self.sigma_n_sq * self.rho.powf(2.0 * p - 1.0)
    }
}

/// Unbounded noise-uncertainty model: the dB offset from the nominal power
/// `σ²_n,dB` is `N(0, σ²_Δ,dB)`, so the linear power is log-normal.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LogNormalModel {
    sigma_n_db: f64,
    sigma_delta_db: f64,
}

impl LogNormalModel {
    /// Build from the nominal power in dB and the dB-offset standard
    /// deviation `σ_Δ,dB > 0`.
    pub fn new(sigma_n_db: f64, sigma_delta_db: f64) -> Result<Self> {
        if !sigma_n_db.is_finite() {
            return Err(Error::domain(
                "LogNormalModel::new",
                format!("nominal power must be finite, got {sigma_n_db} dB"),
            ));
        }
        if !sigma_delta_db.is_finite() || sigma_delta_db <= 0.0 {
            return Err(Error::domain(
                "LogNormalModel::new",
                format!("sigma_delta_db must be positive, got {sigma_delta_db}"),
            ));
        }
        Ok(LogNormalModel {
            sigma_n_db,
            sigma_delta_db,
        })
    }

    pub fn sigma_n_db(&self) -> f64 {
        self.sigma_n_db
    }

    pub fn sigma_delta_db(&self) -> f64 {
        self.sigma_delta_db
    }

    /// Nominal noise power on the linear scale.
    pub fn sigma_n_sq(&self) -> f64 {
        (LN_10_OVER_10 * self.sigma_n_db).exp()
    }

    /// Constants of the truncated-Gaussian surrogate: the exact log-normal
    /// mean `φ₁` and variance `φ₂`, and the positive-half normalizer `φ₃`.
    pub fn gaussian_approx_params(&self) -> GaussianApproxParams {
        let k = LN_10_OVER_10;
        let k2s2 = k * k * self.sigma_delta_db * self.sigma_delta_db;
        let phi1 = (k * self.sigma_n_db + 0.5 * k2s2).exp();
        let phi2 = (k2s2.exp_m1()) * (2.0 * k * self.sigma_n_db + k2s2).exp();
        let phi3 = 0.5 * (2.0 - erfc(phi1 / (2.0 * phi2).sqrt()));
        GaussianApproxParams { phi1, phi2, phi3 }
    }

    fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let k = LN_10_OVER_10;
        let s = k * self.sigma_delta_db;
        let z = (x.ln() - k * self.sigma_n_db) / s;
        (-0.5 * z * z).exp() / (x * s * TAU.sqrt())
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let k = LN_10_OVER_10;
        let z = (x.ln() - k * self.sigma_n_db) / (k * self.sigma_delta_db);
        std_normal_cdf(z)
    }

    fn quantile(&self, p: f64) -> f64 {
        let k = LN_10_OVER_10;
        (k * self.sigma_n_db + k * self.sigma_delta_db * std_normal_quantile(p)).exp()
    }
}

/// Constants of the Gaussian surrogate for a log-normal noise model
/// (its exact mean, variance, and positive-truncation normalizer).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GaussianApproxParams {
    /// Mean of the log-normal power, `exp(k σ²_n,dB + k² σ²_Δ,dB / 2)`.
    pub phi1: f64,
    /// Variance of the log-normal power.
    pub phi2: f64,
    /// Probability mass of `N(φ₁, φ₂)` on `x > 0`; lies in `(1/2, 1]`.
    pub phi3: f64,
}

/// A noise-uncertainty prior: exactly one of the two models, or the Gaussian
/// surrogate of a log-normal model.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseModel {
    LogUniform(LogUniformModel),
    LogNormal(LogNormalModel),
    GaussianApprox(LogNormalModel),
}

impl NoiseModel {
    /// Probability density at `x`; zero outside the support.
    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            NoiseModel::LogUniform(m) => m.pdf(x),
            NoiseModel::LogNormal(m) => m.pdf(x),
            NoiseModel::GaussianApprox(m) => {
                if x <= 0.0 {
                    return 0.0;
                }
                let p = m.gaussian_approx_params();
                let z = (x - p.phi1) / p.phi2.sqrt();
                (-0.5 * z * z).exp() / ((TAU * p.phi2).sqrt() * p.phi3)
            }
        }
    }

    /// Cumulative distribution at `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            NoiseModel::LogUniform(m) => m.cdf(x),
            NoiseModel::LogNormal(m) => m.cdf(x),
            NoiseModel::GaussianApprox(m) => {
                if x <= 0.0 {
                    return 0.0;
                }
                let p = m.gaussian_approx_params();
                let z = (x - p.phi1) / p.phi2.sqrt();
                ((std_normal_cdf(z) - (1.0 - p.phi3)) / p.phi3).clamp(0.0, 1.0)
            }
        }
    }

    /// Inverse CDF for `p` in `(0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0 < p && p < 1.0) {
            return Err(Error::domain(
                "NoiseModel::quantile",
                format!("probability must lie in (0, 1), got {p}"),
            ));
        }
        Ok(match self {
            NoiseModel::LogUniform(m) => m.quantile(p),
            NoiseModel::LogNormal(m) => m.quantile(p),
            NoiseModel::GaussianApprox(m) => {
                let gp = m.gaussian_approx_params();
                // Inverse of the truncated CDF: map p back into the full
                // normal scale before applying the normal quantile.
                let q = 1.0 - gp.phi3 * (1.0 - p);
                gp.phi1 + gp.phi2.sqrt() * std_normal_quantile(q)
            }
        })
    }

    /// Nominal (linear-scale) noise power `σ_n²`.
    pub fn nominal_power(&self) -> f64 {
        match self {
            NoiseModel::LogUniform(m) => m.sigma_n_sq(),
            NoiseModel::LogNormal(m) | NoiseModel::GaussianApprox(m) => m.sigma_n_sq(),
        }
    }

    /// Whether the support of the prior is a bounded interval.
    pub fn is_bounded(&self) -> bool {
        matches!(self, NoiseModel::LogUniform(_))
    }

    /// Draw `count` noise powers, deterministically for a given `seed`.
    ///
    /// The generator is ChaCha8 seeded via `seed_from_u64`.
    pub fn sample(&self, seed: u64, count: usize) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(Error::domain("NoiseModel::sample", "count must be >= 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(self.sample_with(&mut rng, count))
    }

    /// Draw `count` noise powers from a caller-managed generator. Used by the
    /// Monte Carlo engine to run independent substreams.
    pub fn sample_with<R: RngCore>(&self, rng: &mut R, count: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(count);
        match self {
            NoiseModel::LogUniform(m) => {
                // Inverse CDF of a uniform dB offset.
                for _ in 0..count {
                    out.push(m.quantile(uniform_01(rng)));
                }
            }
            NoiseModel::LogNormal(m) => {
                let k = LN_10_OVER_10;
                while out.len() < count {
                    let (z1, z2) = normal_pair(rng);
                    out.push((k * (m.sigma_n_db + m.sigma_delta_db * z1)).exp());
                    if out.len() < count {
                        out.push((k * (m.sigma_n_db + m.sigma_delta_db * z2)).exp());
                    }
                }
            }
            NoiseModel::GaussianApprox(m) => {
                let p = m.gaussian_approx_params();
                let sd = p.phi2.sqrt();
                for _ in 0..count {
                    let u = uniform_open_01(rng);
                    let q = 1.0 - p.phi3 * (1.0 - u);
                    out.push(p.phi1 + sd * std_normal_quantile(q));
                }
            }
        }
        out
    }
}

/// Standard normal CDF.
pub(crate) fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// Standard normal quantile for `p` strictly inside `(0, 1)`.
pub(crate) fn std_normal_quantile(p: f64) -> f64 {
    SQRT_2 * erfinv(2.0 * p - 1.0).expect("p in (0,1) maps inside erfinv domain")
}

/// Uniform draw in `[0, 1)` with 53-bit resolution.
pub(crate) fn uniform_01<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw strictly inside `(0, 1)`.
pub(crate) fn uniform_open_01<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// One Box–Muller pair of independent standard normals.
pub(crate) fn normal_pair<R: RngCore>(rng: &mut R) -> (f64, f64) {
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64); // (0, 1]
    let u2 = uniform_01(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    (r * c, r * s)
}
