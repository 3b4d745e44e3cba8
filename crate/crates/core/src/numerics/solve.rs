//! Scalar minimization and bisection root-finding.

use super::Tolerance;
use crate::{Error, Result};

/// Number of coarse-scan intervals used before local refinement.
const GRID_INTERVALS: usize = 4096;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimize `f` on `[lo, hi]`. Returns `(argmin, min)`.
///
/// A coarse scan over `GRID_INTERVALS + 1` points locates the basin (no
/// unimodality assumption), then golden-section search refines inside the
/// bracketing grid cells. The returned value is never above any scanned grid
/// value, and ties resolve to the smallest argmin.
pub fn minimize_scalar<F>(f: F, lo: f64, hi: f64, tol: &Tolerance) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::domain(
            "minimize_scalar",
            format!("need finite lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                context: "minimize_scalar",
                at: x,
            })
        }
    };

    let step = (hi - lo) / GRID_INTERVALS as f64;
    let mut best_x = lo;
    let mut best_f = eval(lo)?;
    for i in 1..=GRID_INTERVALS {
        let x = if i == GRID_INTERVALS { hi } else { lo + step * i as f64 };
        let v = eval(x)?;
        if v < best_f {
            best_f = v;
            best_x = x;
        }
    }

    // Golden-section refinement inside the two grid cells around the best
    // scan point.
    let mut a = (best_x - step).max(lo);
    let mut b = (best_x + step).min(hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    for _ in 0..tol.max_iter.max(64) {
        if (b - a) <= tol.interval(0.5 * (a + b)) {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
    }
    let xm = 0.5 * (a + b);
    let fm = eval(xm)?;
    // Only a strict improvement replaces the scan minimum; this keeps the
    // smallest-argmin tie-break (a constant f returns (lo, f(lo))).
    for (x, v) in [(x1, f1), (x2, f2), (xm, fm)] {
        if v < best_f || (v == best_f && x < best_x) {
            best_f = v;
            best_x = x;
        }
    }
    Ok((best_x, best_f))
}

/// Find `x` in `[lo, hi]` with `f(x) = target` for monotone `f`, by bisection.
///
/// Decreasing functions are handled by orientation detection from the
/// endpoint values. Errors when the endpoints do not bracket `target`.
pub fn bisect<F>(f: F, lo: f64, hi: f64, target: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::domain(
            "bisect",
            format!("need finite lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let f_lo = f(lo);
    let f_hi = f(hi);
    if !f_lo.is_finite() {
        return Err(Error::NonFinite {
            context: "bisect",
            at: lo,
        });
    }
    if !f_hi.is_finite() {
        return Err(Error::NonFinite {
            context: "bisect",
            at: hi,
        });
    }
    if f_lo == target {
        return Ok(lo);
    }
    if f_hi == target {
        return Ok(hi);
    }
    if (f_lo - target).signum() == (f_hi - target).signum() {
        return Err(Error::NoBracket {
            context: "bisect",
            lo,
            hi,
            f_lo,
            f_hi,
            target,
        });
    }
    // Orient so the residual is negative on the `a` side.
    let sign = if f_lo < target { 1.0 } else { -1.0 };
    let mut a = lo;
    let mut b = hi;
    let mut mid = 0.5 * (a + b);
    for _ in 0..tol.max_iter.max(64) {
        mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Ok(mid);
        }
        let v = f(mid);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "bisect",
                at: mid,
            });
        }
        let r = sign * (v - target);
        if r.abs() <= tol.abs_tol {
            return Ok(mid);
        }
        if r < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if (b - a) <= tol.interval(mid) {
            return Ok(0.5 * (a + b));
        }
    }
    Err(Error::Convergence {
        context: "bisect",
        iterations: tol.max_iter.max(64),
        best: mid,
    })
}
