//! Analysis of covert communication when the warden's own noise power is
//! uncertain.
//!
//! The warden ("Willie") runs a radiometer: he thresholds the average received
//! power to decide whether a transmission is present. When his receiver noise
//! power `σ_w²` is only known through a prior distribution, the quality of that
//! test must be judged statistically. This crate provides:
//!
//! * the two standard noise-uncertainty priors — bounded log-uniform and
//!   unbounded log-normal — with densities, CDFs, and seeded samplers
//!   ([`noise`]);
//! * the radiometer's false-alarm / misdetection probabilities for finite
//!   sample counts and the 0/1 error-sum indicator in the infinite-sample
//!   limit ([`detector`]);
//! * three covertness measures over a noise prior: the average covert
//!   probability, the covert outage probability, and the worst-case error sum
//!   used by earlier robust-statistics analyses ([`metrics`]);
//! * received-power thresholds that meet a covertness requirement, and the
//!   covert rates they allow over an AWGN link ([`rates`]);
//! * a seeded Monte Carlo engine that independently verifies every closed
//!   form above ([`montecarlo`]);
//! * the supporting numerics: dB conversions, error-function family, adaptive
//!   quadrature, scalar minimization, and bisection ([`numerics`]).
//!
//! All analytic routines are pure functions of their inputs and safe to call
//! from any number of threads. Stochastic routines take an explicit 64-bit
//! seed and are deterministic given that seed; the generator is ChaCha8
//! (`rand_chacha::ChaCha8Rng`), with independent substreams derived via the
//! cipher's stream counter for partitioned Monte Carlo runs.

pub mod detector;
mod error;
pub mod metrics;
pub mod montecarlo;
pub mod noise;
pub mod numerics;
pub mod rates;

pub use error::{Error, Result};

pub use detector::{DetectionScenario, DetectorErrors, SampleCount};
pub use metrics::{CovertnessReport, Method};
pub use montecarlo::{EstimateWithCi, MonteCarloConfig, ThresholdChoice};
pub use noise::{GaussianApproxParams, LogNormalModel, LogUniformModel, NoiseModel};
pub use numerics::Tolerance;
pub use rates::{CovertnessRequirement, LinkGeometry};
