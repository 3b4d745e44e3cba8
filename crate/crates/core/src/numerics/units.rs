//! Decibel / linear power-ratio conversions.

use crate::{Error, Result};

/// `ln(10)/10`, the factor converting a dB value to a natural-log exponent:
/// `ln(db_to_linear(x)) = LN_10_OVER_10 * x`.
pub const LN_10_OVER_10: f64 = 0.230_258_509_299_404_57;

/// Convert a dB power ratio to linear scale, `10^(x/10)`.
///
/// Errors on non-finite input.
pub fn db_to_linear(value_db: f64) -> Result<f64> {
    if !value_db.is_finite() {
        return Err(Error::domain(
            "db_to_linear",
            format!("dB value must be finite, got {value_db}"),
        ));
    }
    Ok(10f64.powf(value_db / 10.0))
}

/// Convert a linear power ratio to dB, `10 log10(x)`.
///
/// Errors unless the input is finite and strictly positive.
pub fn linear_to_db(value: f64) -> Result<f64> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::domain(
            "linear_to_db",
            format!("linear value must be finite and positive, got {value}"),
        ));
    }
    Ok(10.0 * value.log10())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(db_to_linear(0.0).unwrap(), 1.0);
        // -100 dB is the nominal noise power used throughout the experiments.
        let v = db_to_linear(-100.0).unwrap();
        assert!((v - 1e-10).abs() / 1e-10 < 1e-12);
        // 10^0.3, frozen from 40-digit evaluation.
        let v = db_to_linear(3.0).unwrap();
        assert!((v - 1.995_262_314_968_879_6).abs() < 1e-12);
    }

    #[test]
    fn roundtrip_over_wide_range() {
        let mut x = -200.0;
        while x <= 200.0 {
            let back = linear_to_db(db_to_linear(x).unwrap()).unwrap();
            assert!(
                (back - x).abs() <= 1e-12 * x.abs().max(1.0),
                "roundtrip failed at {x}: {back}"
            );
            x += 0.37;
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(db_to_linear(f64::NAN).is_err());
        assert!(db_to_linear(f64::INFINITY).is_err());
        assert!(linear_to_db(0.0).is_err());
        assert!(linear_to_db(-1.0).is_err());
        assert!(linear_to_db(f64::NAN).is_err());
    }

    #[test]
    fn ln10_over_10_consistent_with_conversion() {
        // exp(k * x_db) must equal 10^(x_db/10).
        for x in [-120.0, -3.0, 0.5, 40.0] {
            let via_k = (LN_10_OVER_10 * x).exp();
            let via_pow = db_to_linear(x).unwrap();
            assert!((via_k - via_pow).abs() / via_pow < 1e-14);
        }
    }
}
