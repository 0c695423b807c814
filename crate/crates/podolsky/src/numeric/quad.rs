//! Adaptive Simpson quadrature with a returned error estimate.

use crate::error::{Error, Result};

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Accumulated Richardson error estimate, absolute.
    pub error_estimate: f64,
    pub evaluations: usize,
}

struct Workspace<'f> {
    f: &'f dyn Fn(f64) -> f64,
    evaluations: usize,
    error_acc: f64,
}

fn simpson(h: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

/// One level of recursive refinement on [a, b] with prior estimate `whole`.
/// `eps` is the absolute error budget for this interval; it halves with each
/// split so the total stays bounded. Depth is the remaining recursion
/// allowance; hitting zero before the local estimate converges is an error.
#[allow(clippy::too_many_arguments)]
fn refine(
    ws: &mut Workspace,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = (ws.f)(lm);
    let frm = (ws.f)(rm);
    ws.evaluations += 2;
    let left = simpson(m - a, fa, flm, fm);
    let right = simpson(b - m, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * eps || (m - a) < f64::EPSILON * m.abs() {
        ws.error_acc += delta.abs() / 15.0;
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Convergence {
            context: format!("adaptive Simpson stalled on [{a:e}, {b:e}]"),
            achieved: delta.abs(),
        });
    }
    let l = refine(ws, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)?;
    let r = refine(ws, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)?;
    Ok(l + r)
}

/// Integrate f over [a, b] to the requested relative tolerance.
///
/// The absolute budget is set from a coarse composite-Simpson scan of the
/// interval, so integrands whose mass is concentrated in a narrow region are
/// still resolved: the adaptive recursion finds the spike even when the
/// scan's own value is poor. Returns the integral with an error estimate.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Domain(format!(
            "integration interval [{a:e}, {b:e}] must be finite and ordered"
        )));
    }
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(Error::Domain(format!(
            "relative tolerance {rel_tol:e} must be positive"
        )));
    }
    let mut ws = Workspace {
        f,
        evaluations: 0,
        error_acc: 0.0,
    };

    // Coarse scan for the scale of the answer (65 evaluations).
    let panels = 32;
    let h = (b - a) / panels as f64;
    let mut scan = 0.0;
    let mut grid = Vec::with_capacity(panels + 1);
    for i in 0..=2 * panels {
        let x = a + 0.5 * h * i as f64;
        let fx = f(x);
        ws.evaluations += 1;
        if i % 2 == 0 {
            grid.push(fx);
        }
        scan += fx
            * if i == 0 || i == 2 * panels {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
    }
    scan *= h / 6.0;
    let scale = scan.abs().max(f64::MIN_POSITIVE);
    let eps = rel_tol * scale / panels as f64;

    // Refine each coarse panel so the budget spreads evenly.
    let mut total = 0.0;
    for i in 0..panels {
        let (xa, xb) = (a + h * i as f64, a + h * (i + 1) as f64);
        let fm = f(0.5 * (xa + xb));
        ws.evaluations += 1;
        let whole = simpson(h, grid[i], fm, grid[i + 1]);
        total += refine(&mut ws, xa, xb, grid[i], fm, grid[i + 1], whole, eps, 52)?;
    }
    Ok(Quadrature {
        value: total,
        error_estimate: ws.error_acc.max(f64::EPSILON * scale),
        evaluations: ws.evaluations,
    })
}
