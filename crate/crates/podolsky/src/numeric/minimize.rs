//! Bracketing scalar minimization without derivatives.
//!
//! Plain golden-section search bottoms out at sqrt(eps) ~ 1e-8 relative,
//! because near the minimum the function is flat to first order and f64
//! evaluation noise swamps the quadratic signal. To do better we switch
//! strategies once the bracket is small: bisect on the sign of a centered
//! finite-difference slope. The slope flips sign crisply across the minimum
//! even when the function values themselves are noise-level flat, which
//! recovers roughly 1e-11 relative placement.

use crate::error::{Error, Result};

const GOLDEN: f64 = 0.618_033_988_749_894_8; // (sqrt(5) - 1) / 2

/// Locate the minimizer of a unimodal f on [lo, hi].
///
/// Requires lo < hi and f finite on the bracket. The minimum must be
/// interior: if the search collapses onto an endpoint the bracket did not
/// contain a minimum and an error is returned.
pub fn bracket_minimize(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!(
            "minimization bracket [{lo:e}, {hi:e}] must be finite and ordered"
        )));
    }
    let span = hi - lo;

    // Stage 1: golden section down to a comfortably coarse width.
    let (mut a, mut b) = (lo, hi);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a) > 1e-5 * span {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let coarse = 0.5 * (a + b);
    if (coarse - lo).abs() < 2e-5 * span || (hi - coarse).abs() < 2e-5 * span {
        return Err(Error::Domain(format!(
            "no interior minimum in [{lo:e}, {hi:e}]: search collapsed onto an endpoint"
        )));
    }

    // Stage 2: bisect the sign of the centered finite-difference slope.
    // Step h ~ eps^(1/3) * scale balances truncation against cancellation.
    let scale = coarse.abs().max(1e-3 * span);
    let h = 6e-6 * scale;
    let slope = |x: f64| f(x + h) - f(x - h);
    let (mut a, mut b) = (coarse - 40.0 * h, coarse + 40.0 * h);
    let (mut sa, sb) = (slope(a), slope(b));
    if !(sa < 0.0 && sb > 0.0) {
        // The coarse stage already has the answer to ~1e-5 relative; the
        // slope is too flat to refine further (e.g. a fold-point minimum).
        return Ok(coarse);
    }
    for _ in 0..70 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let sm = slope(mid);
        if sm == 0.0 {
            return Ok(mid);
        }
        if (sm > 0.0) == (sa > 0.0) {
            a = mid;
            sa = sm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
