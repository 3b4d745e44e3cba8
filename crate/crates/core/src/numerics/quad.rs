//! Adaptive 1-D quadrature.

use super::Tolerance;
use crate::{Error, Result};

/// Integrate `f` over `[lo, hi]` by adaptive Simpson subdivision.
///
/// The interval is split recursively until the local Richardson error
/// estimate meets the (halved-per-split) tolerance, up to `tol.max_iter`
/// levels. Deterministic for a given integrand.
///
/// On depth exhaustion the best assembled estimate is carried inside the
/// returned [`Error::Convergence`].
pub fn integrate<F>(f: F, lo: f64, hi: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::domain(
            "integrate",
            format!("need finite lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let mut state = State {
        f,
        tol: *tol,
        exhausted: false,
        non_finite_at: None,
    };
    let flo = state.eval(lo);
    let fhi = state.eval(hi);
    let mid = 0.5 * (lo + hi);
    let fmid = state.eval(mid);
    let whole = simpson(lo, hi, flo, fmid, fhi);
    let total = state.refine(lo, hi, flo, fmid, fhi, whole, tol.abs_tol, 0);
    if let Some(at) = state.non_finite_at {
        return Err(Error::NonFinite {
            context: "integrate",
            at,
        });
    }
    if state.exhausted {
        return Err(Error::Convergence {
            context: "integrate",
            iterations: tol.max_iter,
            best: total,
        });
    }
    Ok(total)
}

struct State<F> {
    f: F,
    tol: Tolerance,
    exhausted: bool,
    non_finite_at: Option<f64>,
}

impl<F: Fn(f64) -> f64> State<F> {
    fn eval(&mut self, x: f64) -> f64 {
        let v = (self.f)(x);
        if !v.is_finite() && self.non_finite_at.is_none() {
            self.non_finite_at = Some(x);
        }
        v
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        abs_budget: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm);
        let frm = self.eval(rm);
        if self.non_finite_at.is_some() {
            return whole;
        }
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let refined = left + right;
        let err = refined - whole;
        // A few forced splits guard against spurious agreement on symmetric
        // integrands.
        if depth >= 4 && err.abs() <= 15.0 * (abs_budget + self.tol.rel_tol * refined.abs()) {
            return refined + err / 15.0;
        }
        if depth >= self.tol.max_iter {
            self.exhausted = true;
            return refined + err / 15.0;
        }
        let half = 0.5 * abs_budget;
        self.refine(a, m, fa, flm, fm, left, half, depth + 1)
            + self.refine(m, b, fm, frm, fb, right, half, depth + 1)
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_exact() {
        let v = integrate(|_| 1.0, 0.0, 1.0, &Tolerance::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn log_uniform_density_normalizes() {
        // 1/(2 ln 2 · x) over [1/2, 2] integrates to exactly 1.
        let ln2 = std::f64::consts::LN_2;
        let v = integrate(|x| 1.0 / (2.0 * ln2 * x), 0.5, 2.0, &Tolerance::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn gaussian_density_normalizes() {
        let pdf = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let v = integrate(pdf, -8.0, 8.0, &Tolerance::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn linearity_on_smooth_functions() {
        let tol = Tolerance::default();
        let f = |x: f64| x.sin();
        let g = |x: f64| (x * x).exp().recip();
        let (a, b) = (3.0, -2.0);
        let lhs = integrate(|x| a * f(x) + b * g(x), 0.0, 2.0, &tol).unwrap();
        let rhs = a * integrate(f, 0.0, 2.0, &tol).unwrap() + b * integrate(g, 0.0, 2.0, &tol).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn depth_exhaustion_carries_best_estimate() {
        let tight = Tolerance::new(1e-300, 0.0, 5).unwrap();
        match integrate(|x: f64| x.sqrt(), 0.0, 1.0, &tight) {
            Err(Error::Convergence { best, .. }) => {
                assert!((best - 2.0 / 3.0).abs() < 1e-3, "best estimate {best}");
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_reported() {
        let r = integrate(|x: f64| 1.0 / x, 0.0, 1.0, &Tolerance::default());
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(integrate(|_| 1.0, 1.0, 0.0, &Tolerance::default()).is_err());
        assert!(integrate(|_| 1.0, 0.0, f64::INFINITY, &Tolerance::default()).is_err());
    }
}
