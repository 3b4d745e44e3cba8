//! Seeded Monte Carlo verification engine.
//!
//! Every estimator here is an independent stochastic route to a quantity the
//! analytic modules compute in closed form (or by quadrature): empirical
//! average covert probability and covert outage, a simulated-sample
//! radiometer for finite-`N` error rates, and a common-random-numbers
//! bisection that reproduces the power thresholds.
//!
//! Determinism contract: every run is a pure function of its inputs and the
//! 64-bit seed. Trials are split into fixed-size partitions; partition `j`
//! draws from ChaCha8 stream `j` of the seeded generator, so results are
//! identical no matter how partitions are scheduled.

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::detector::asymptotic_error_sum;
use crate::error::check_epsilon;
use crate::metrics::optimal_gamma;
use crate::noise::{normal_pair, NoiseModel};
use crate::numerics::Tolerance;
use crate::rates::worst_case_power_bound;
use crate::{Error, Result};

/// Trials per RNG substream; partition `j` uses ChaCha8 stream `j`.
const PARTITION: usize = 1 << 16;

/// Seed, trial count, and CI multiplier for one Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MonteCarloConfig {
    seed: u64,
    trials: usize,
    confidence_z: f64,
}

impl MonteCarloConfig {
    /// At least 100 trials; the reported half-width multiplier defaults to 3.
    pub fn new(seed: u64, trials: usize) -> Result<Self> {
        if trials < 100 {
            return Err(Error::domain(
                "MonteCarloConfig::new",
                format!("need at least 100 trials, got {trials}"),
            ));
        }
        Ok(MonteCarloConfig {
            seed,
            trials,
            confidence_z: 3.0,
        })
    }

    pub fn with_confidence_z(mut self, z: f64) -> Result<Self> {
        if !z.is_finite() || z <= 0.0 {
            return Err(Error::domain(
                "MonteCarloConfig::with_confidence_z",
                format!("confidence multiplier must be positive, got {z}"),
            ));
        }
        self.confidence_z = z;
        Ok(self)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn confidence_z(&self) -> f64 {
        self.confidence_z
    }
}

/// A point estimate with its `confidence_z`-sigma half-width.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EstimateWithCi {
    pub estimate: f64,
    pub half_width: f64,
    pub trials: usize,
}

/// Detection threshold selection for the empirical estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdChoice {
    /// Resolve γ via the analytic optimum for the model.
    Auto,
    Fixed(f64),
}

fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draw every noise-power sample for a run, partitioned into substreams.
fn draw_noise_powers(model: &NoiseModel, cfg: &MonteCarloConfig) -> Vec<f64> {
    let mut xs = Vec::with_capacity(cfg.trials);
    let mut part = 0u64;
    while xs.len() < cfg.trials {
        let n = PARTITION.min(cfg.trials - xs.len());
        let mut rng = substream(cfg.seed, part);
        xs.extend(model.sample_with(&mut rng, n));
        part += 1;
    }
    xs
}

/// Normal-approximation binomial half-width, with a Wilson-adjusted center
/// when fewer than 10 successes keep the plain formula honest.
fn proportion_ci(successes: usize, trials: usize, z: f64) -> EstimateWithCi {
    let n = trials as f64;
    let estimate = successes as f64 / n;
    let p = if (successes as f64) < 10.0 {
        (successes as f64 + 0.5 * z * z) / (n + z * z)
    } else {
        estimate
    };
    EstimateWithCi {
        estimate,
        half_width: z * (p * (1.0 - p) / n).sqrt(),
        trials,
    }
}

fn count_outside(samples: &[f64], gamma: f64, p_w: f64) -> usize {
    samples
        .iter()
        .map(|&x| asymptotic_error_sum(x, gamma, p_w) as usize)
        .sum()
}

/// Empirical average covert probability: the mean of the asymptotic error
/// indicator over sampled noise powers.
pub fn estimate_xi_avg(
    model: &NoiseModel,
    p_w: f64,
    gamma: ThresholdChoice,
    cfg: &MonteCarloConfig,
) -> EstimateWithCi {
    let gamma = match gamma {
        ThresholdChoice::Auto => optimal_gamma(model, p_w),
        ThresholdChoice::Fixed(g) => g,
    };
    let xs = draw_noise_powers(model, cfg);
    proportion_ci(count_outside(&xs, gamma, p_w), cfg.trials, cfg.confidence_z)
}

/// Empirical covert outage probability: the fraction of draws whose error sum
/// falls below `1-ε` at the warden's best threshold.
///
/// Shares its draws with [`estimate_xi_avg`], so under the same seed the two
/// estimates sum to exactly 1.
pub fn estimate_p_out(
    model: &NoiseModel,
    p_w: f64,
    epsilon: f64,
    cfg: &MonteCarloConfig,
) -> Result<EstimateWithCi> {
    check_epsilon("estimate_p_out", epsilon)?;
    let gamma = optimal_gamma(model, p_w);
    let xs = draw_noise_powers(model, cfg);
    let outside = count_outside(&xs, gamma, p_w);
    let inside = cfg.trials - outside;
    let mut ci = proportion_ci(inside, cfg.trials, cfg.confidence_z);
    // Exact complement of the shared-draw ξ̄ estimate.
    ci.estimate = 1.0 - (outside as f64 / cfg.trials as f64);
    Ok(ci)
}

/// Monte Carlo power threshold: bisect the empirical `ξ̄(P_w)` for
/// `ξ̄ = 1-ε` over one fixed draw set.
///
/// Reusing the same samples at every trial power (common random numbers)
/// makes the empirical curve a non-increasing step function, so bisection
/// lands on the step nearest `1-ε`, resolving ties toward smaller power.
pub fn mc_threshold(
    model: &NoiseModel,
    epsilon: f64,
    cfg: &MonteCarloConfig,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(mc_threshold_with_ci(model, epsilon, cfg, tol)?.0)
}

/// [`mc_threshold`] plus a statistical half-width: the binomial half-width of
/// the window-mass estimate divided by the local slope of the empirical
/// curve.
pub fn mc_threshold_with_ci(
    model: &NoiseModel,
    epsilon: f64,
    cfg: &MonteCarloConfig,
    tol: &Tolerance,
) -> Result<(f64, f64)> {
    check_epsilon("mc_threshold", epsilon)?;
    let xs = draw_noise_powers(model, cfg);
    let n = cfg.trials as f64;
    let emp_xi = |p: f64| count_outside(&xs, optimal_gamma(model, p), p) as f64 / n;
    let target = 1.0 - epsilon;

    let mut hi = match model {
        NoiseModel::LogUniform(m) => worst_case_power_bound(m),
        _ => {
            let scale = model.quantile(0.84)? - model.quantile(0.16)?;
            let cap = 1e3 * scale;
            let mut hi = scale;
            while emp_xi(hi) >= target {
                hi *= 2.0;
                if hi > cap {
                    return Err(Error::Convergence {
                        context: "mc_threshold",
                        iterations: 0,
                        best: hi,
                    });
                }
            }
            hi
        }
    };
    let mut lo = 0.0;
    for _ in 0..tol.max_iter.max(64) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= tol.interval(mid) {
            break;
        }
        // Equality counts as "requirement already met", pushing the bracket
        // left so ties resolve to the smaller power.
        if emp_xi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p_hat = 0.5 * (lo + hi);

    // Statistical half-width: binomial noise on the window mass over the
    // local slope of the empirical curve.
    let mass = 1.0 - emp_xi(p_hat);
    let hw_mass = cfg.confidence_z * (mass.max(1e-12) * (1.0 - mass).max(1e-12) / n).sqrt();
    let h = 0.05 * p_hat.max(f64::MIN_POSITIVE);
    let slope = (emp_xi((p_hat - h).max(0.0)) - emp_xi(p_hat + h)) / (2.0 * h);
    let hw = if slope > 0.0 { hw_mass / slope } else { h };
    Ok((p_hat, hw))
}

/// Sample-level radiometer simulation.
///
/// Per trial, `n_samples` noise-only draws (variance `σ_w²`) and `n_samples`
/// signal-plus-noise draws (variance `P_w + σ_w²`) are squared, averaged, and
/// thresholded at `γ`. Returns empirical `(p_fa, p_md)` with confidence
/// half-widths.
pub fn simulate_detector(
    sigma_w_sq: f64,
    p_w: f64,
    n_samples: u64,
    gamma: f64,
    cfg: &MonteCarloConfig,
) -> Result<(EstimateWithCi, EstimateWithCi)> {
    if !sigma_w_sq.is_finite() || sigma_w_sq <= 0.0 {
        return Err(Error::domain(
            "simulate_detector",
            format!("noise power must be positive, got {sigma_w_sq}"),
        ));
    }
    if n_samples == 0 {
        return Err(Error::domain("simulate_detector", "need n_samples >= 1"));
    }
    if !p_w.is_finite() || p_w < 0.0 {
        return Err(Error::domain(
            "simulate_detector",
            format!("received power must be non-negative, got {p_w}"),
        ));
    }
    let h0_var = sigma_w_sq;
    let h1_var = p_w + sigma_w_sq;
    let n = n_samples as f64;
    let mut false_alarms = 0usize;
    let mut misdetections = 0usize;
    let mut done = 0usize;
    let mut part = 0u64;
    while done < cfg.trials {
        let batch = PARTITION.min(cfg.trials - done);
        let mut rng = substream(cfg.seed, part);
        for _ in 0..batch {
            let t0 = h0_var * mean_square(&mut rng, n_samples) / n;
            let t1 = h1_var * mean_square(&mut rng, n_samples) / n;
            if t0 > gamma {
                false_alarms += 1;
            }
            if t1 <= gamma {
                misdetections += 1;
            }
        }
        done += batch;
        part += 1;
    }
    Ok((
        proportion_ci(false_alarms, cfg.trials, cfg.confidence_z),
        proportion_ci(misdetections, cfg.trials, cfg.confidence_z),
    ))
}

/// Sum of `n` squared standard normals (Box–Muller pairs; the spare draw of
/// an odd tail is discarded to keep the stream layout fixed).
fn mean_square(rng: &mut ChaCha8Rng, n: u64) -> f64 {
    let mut sum = 0.0;
    let mut i = 0;
    while i + 2 <= n {
        let (a, b) = normal_pair(rng);
        sum += a * a + b * b;
        i += 2;
    }
    if i < n {
        let (a, _) = normal_pair(rng);
        sum += a * a;
    }
    sum
}
