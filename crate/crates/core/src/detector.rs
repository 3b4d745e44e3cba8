//! The warden's radiometer: mean-square test statistic and its error
//! probabilities.
//!
//! The detector thresholds `T = (1/N) Σ y[n]²` at `γ` and declares a
//! transmission when `T > γ`. For large `N` the statistic is approximately
//! normal under both hypotheses, giving closed false-alarm and misdetection
//! probabilities; as `N → ∞` their sum collapses to a 0/1 indicator of
//! whether `γ` lands inside `[σ_w², P_w + σ_w²]`.

use crate::numerics::q_function;
use crate::{Error, Result};

/// Number of radiometer samples: finite, or the infinite-sample limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleCount {
    Finite(u64),
    Asymptotic,
}

/// Received-signal conditions at the warden: average signal power `P_w`
/// plus the sample-count regime.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DetectionScenario {
    p_w: f64,
    samples: SampleCount,
}

impl DetectionScenario {
    pub fn new(p_w: f64, samples: SampleCount) -> Result<Self> {
        if !p_w.is_finite() || p_w < 0.0 {
            return Err(Error::domain(
                "DetectionScenario::new",
                format!("received power must be finite and non-negative, got {p_w}"),
            ));
        }
        if let SampleCount::Finite(0) = samples {
            return Err(Error::domain(
                "DetectionScenario::new",
                "finite sample count must be >= 1",
            ));
        }
        Ok(DetectionScenario { p_w, samples })
    }

    pub fn finite(p_w: f64, n: u64) -> Result<Self> {
        Self::new(p_w, SampleCount::Finite(n))
    }

    pub fn asymptotic(p_w: f64) -> Result<Self> {
        Self::new(p_w, SampleCount::Asymptotic)
    }

    pub fn p_w(&self) -> f64 {
        self.p_w
    }

    pub fn samples(&self) -> SampleCount {
        self.samples
    }
}

/// False-alarm and misdetection probabilities of one detector configuration.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DetectorErrors {
    /// `P(declare signal | noise only)`.
    pub p_fa: f64,
    /// `P(declare noise | signal present)`.
    pub p_md: f64,
}

impl DetectorErrors {
    /// The total error probability `ξ = p_FA + p_MD` the warden minimizes.
    pub fn error_sum(&self) -> f64 {
        self.p_fa + self.p_md
    }
}

/// Mean of the squared samples, the radiometer statistic.
pub fn test_statistic(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::domain("test_statistic", "need at least one sample"));
    }
    Ok(samples.iter().map(|y| y * y).sum::<f64>() / samples.len() as f64)
}

/// Gaussian-approximation error probabilities at finite `N`.
///
/// Under noise only, `T ~ N(σ_w², 2σ_w⁴/N)`; with a signal present,
/// `T ~ N(P_w + σ_w², 2(P_w + σ_w²)²/N)`. Requires a finite-`N` scenario.
pub fn finite_n_errors(
    sigma_w_sq: f64,
    gamma: f64,
    scenario: &DetectionScenario,
) -> Result<DetectorErrors> {
    if !sigma_w_sq.is_finite() || sigma_w_sq <= 0.0 {
        return Err(Error::domain(
            "finite_n_errors",
            format!("noise power must be positive, got {sigma_w_sq}"),
        ));
    }
    let n = match scenario.samples {
        SampleCount::Finite(n) => n as f64,
        SampleCount::Asymptotic => {
            return Err(Error::domain(
                "finite_n_errors",
                "requires a finite sample count; use asymptotic_error_sum instead",
            ))
        }
    };
    let spread = (2.0 / n).sqrt();
    let h1_power = scenario.p_w + sigma_w_sq;
    let p_fa = q_function((gamma - sigma_w_sq) / (spread * sigma_w_sq));
    let p_md = 1.0 - q_function((gamma - h1_power) / (spread * h1_power));
    Ok(DetectorErrors { p_fa, p_md })
}

/// The `N → ∞` limit of the error sum: `0` when the threshold separates the
/// hypotheses (`σ_w² ≤ γ ≤ P_w + σ_w²`, closed interval), `1` otherwise.
pub fn asymptotic_error_sum(sigma_w_sq: f64, gamma: f64, p_w: f64) -> f64 {
    if sigma_w_sq <= gamma && gamma <= p_w + sigma_w_sq {
        0.0
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::normal_pair;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn statistic_basics() {
        assert_eq!(test_statistic(&[1.0, -1.0, 1.0, -1.0]).unwrap(), 1.0);
        assert_eq!(test_statistic(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(test_statistic(&[]).is_err());
    }

    #[test]
    fn statistic_obeys_law_of_large_numbers() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sd = 2.0f64.sqrt();
        let mut samples = Vec::with_capacity(100_000);
        while samples.len() < 100_000 {
            let (a, b) = normal_pair(&mut rng);
            samples.push(sd * a);
            samples.push(sd * b);
        }
        let t = test_statistic(&samples).unwrap();
        assert!((t - 2.0).abs() < 0.05, "statistic {t}");
    }

    #[test]
    fn thresholds_at_hypothesis_means_give_half() {
        let sc = DetectionScenario::finite(1.0, 100).unwrap();
        let e = finite_n_errors(1.0, 1.0, &sc).unwrap();
        assert!((e.p_fa - 0.5).abs() < 1e-15);
        let e = finite_n_errors(1.0, 2.0, &sc).unwrap();
        assert!((e.p_md - 0.5).abs() < 1e-15);
    }

    #[test]
    fn worked_finite_n_point() {
        // σ_w² = 1, P_w = 1, N = 100, γ = 1.5; frozen from 40-digit
        // evaluation of the Gaussian forms.
        let sc = DetectionScenario::finite(1.0, 100).unwrap();
        let e = finite_n_errors(1.0, 1.5, &sc).unwrap();
        assert!((e.p_fa - 2.034_760_087e-4).abs() < 1e-12, "p_fa {}", e.p_fa);
        assert!((e.p_md - 0.038_549_935_87).abs() < 1e-10, "p_md {}", e.p_md);
    }

    #[test]
    fn asymptotic_indicator_cases() {
        assert_eq!(asymptotic_error_sum(1.0, 1.2, 0.5), 0.0);
        assert_eq!(asymptotic_error_sum(1.0, 2.0, 0.5), 1.0);
        assert_eq!(asymptotic_error_sum(1.0, 0.8, 0.5), 1.0);
        // Closed-interval boundaries, including the degenerate P_w = 0 case.
        assert_eq!(asymptotic_error_sum(1.0, 1.0, 0.0), 0.0);
        assert_eq!(asymptotic_error_sum(1.0, 1.0, 0.5), 0.0);
        assert_eq!(asymptotic_error_sum(1.0, 1.5, 0.5), 0.0);
    }

    #[test]
    fn finite_n_converges_to_indicator() {
        // Interior threshold: error sum vanishes as N grows.
        let sc = DetectionScenario::finite(1.0, 1_000_000).unwrap();
        let e = finite_n_errors(1.0, 1.5, &sc).unwrap();
        assert!(e.error_sum() < 1e-3, "interior error sum {}", e.error_sum());
        // Exterior threshold: error sum approaches 1.
        let e = finite_n_errors(1.0, 2.5, &sc).unwrap();
        assert!(e.error_sum() > 1.0 - 1e-3, "exterior error sum {}", e.error_sum());
    }

    #[test]
    fn error_rates_monotone_in_threshold() {
        let sc = DetectionScenario::finite(1.0, 200).unwrap();
        let mut prev = finite_n_errors(1.0, 0.0, &sc).unwrap();
        let mut gamma = 0.05;
        while gamma < 3.0 {
            let e = finite_n_errors(1.0, gamma, &sc).unwrap();
            assert!(e.p_fa <= prev.p_fa + 1e-15);
            assert!(e.p_md >= prev.p_md - 1e-15);
            prev = e;
            gamma += 0.05;
        }
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(DetectionScenario::finite(-1.0, 10).is_err());
        assert!(DetectionScenario::finite(1.0, 0).is_err());
        let asymptotic = DetectionScenario::asymptotic(1.0).unwrap();
        assert!(finite_n_errors(1.0, 1.0, &asymptotic).is_err());
        let sc = DetectionScenario::finite(1.0, 100).unwrap();
        assert!(finite_n_errors(0.0, 1.0, &sc).is_err());
    }
}
