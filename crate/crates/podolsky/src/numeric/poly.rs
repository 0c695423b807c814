//! Real roots of polynomials with real coefficients.
//!
//! The solver recurses on derivatives: the real roots of p' split the line
//! into intervals on which p is strictly monotone, so every real root of p
//! is isolated by a sign change and can be bisected without ever missing a
//! crossing. A few Newton steps afterwards polish each root to full
//! precision. This is slower than a companion-matrix eigensolver but has no
//! failure modes beyond those of f64 evaluation itself, which makes it a
//! good fit for the low-degree, occasionally near-degenerate polynomials
//! this crate produces.

/// Evaluate a polynomial by Horner's rule. Coefficients are ordered from the
/// highest power down, so `&[2.0, 0.0, -1.0]` means `2x^2 - 1`.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Evaluate a polynomial and its first derivative in one Horner pass.
pub fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Coefficients of the derivative polynomial.
fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    if n <= 1 {
        return Vec::new();
    }
    coeffs[..n - 1]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (n - 1 - i) as f64)
        .collect()
}

/// Cauchy upper bound on the magnitude of any root: 1 + max |c_i / c_0|.
fn root_bound(coeffs: &[f64]) -> f64 {
    let lead = coeffs[0].abs();
    let max_ratio = coeffs[1..]
        .iter()
        .fold(0.0_f64, |m, &c| m.max(c.abs() / lead));
    1.0 + max_ratio
}

/// Absolute evaluation noise floor at x: eps times the sum of |c_i x^i|.
/// Any |p(x)| below a few multiples of this is numerically indistinguishable
/// from zero.
fn noise_floor(coeffs: &[f64], x: f64) -> f64 {
    let mut scale = 0.0_f64;
    for &c in coeffs {
        scale = scale * x.abs() + c.abs();
    }
    f64::EPSILON * scale
}

/// Bisect a sign change of p on [lo, hi] (p(lo) and p(hi) must have strictly
/// opposite signs), then polish with Newton. Falls back to the bisection
/// midpoint when Newton wanders out of the bracket.
fn refine_root(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = eval(coeffs, lo);
    debug_assert!(f_lo * eval(coeffs, hi) < 0.0);
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval collapsed to adjacent floats
        }
        let f_mid = eval(coeffs, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..6 {
        let (p, dp) = eval_with_derivative(coeffs, x);
        if dp == 0.0 {
            break;
        }
        let next = x - p / dp;
        if !(lo..=hi).contains(&next) {
            break;
        }
        if next == x {
            break;
        }
        x = next;
    }
    x
}

/// All real roots of the polynomial, sorted ascending, multiplicities
/// collapsed. An empty slice or an all-zero polynomial yields no roots.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    // Strip leading zeros so the degree is honest.
    let first = coeffs.iter().position(|&c| c != 0.0);
    let coeffs = match first {
        Some(i) => &coeffs[i..],
        None => return Vec::new(),
    };
    match coeffs.len() {
        0 | 1 => Vec::new(),
        2 => vec![-coeffs[1] / coeffs[0]],
        3 => quadratic_roots(coeffs[0], coeffs[1], coeffs[2]),
        _ => {
            let crit = real_roots(&derivative(coeffs));
            let bound = root_bound(coeffs);
            let mut nodes = Vec::with_capacity(crit.len() + 2);
            nodes.push(-bound);
            nodes.extend(crit.iter().copied().filter(|c| c.abs() < bound));
            nodes.push(bound);

            let mut roots = Vec::new();
            let values: Vec<f64> = nodes.iter().map(|&x| eval(coeffs, x)).collect();
            for (i, w) in nodes.windows(2).enumerate() {
                let (f_lo, f_hi) = (values[i], values[i + 1]);
                if f_lo == 0.0 {
                    push_unique(&mut roots, w[0]);
                } else if f_lo * f_hi < 0.0 {
                    push_unique(&mut roots, refine_root(coeffs, w[0], w[1]));
                } else if f_hi.abs() <= 4.0 * noise_floor(coeffs, w[1]) {
                    // p touches zero at a critical point: a multiple root
                    // with no sign change across it.
                    push_unique(&mut roots, w[1]);
                }
            }
            roots
        }
    }
}

/// Numerically stable quadratic formula.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let (r1, r2) = if b == 0.0 {
        // Roots are symmetric about the origin.
        let r = (disc.sqrt() / (2.0 * a)).abs();
        (-r, r)
    } else {
        // Compute the large-magnitude root first, then the other via the
        // product of roots, avoiding cancellation in -b +/- sqrt(disc).
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        (q / a, c / q)
    };
    let mut out = vec![r1, r2];
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

fn push_unique(roots: &mut Vec<f64>, x: f64) {
    let tol = 1e-11 * (1.0 + x.abs());
    if roots.iter().all(|&r| (r - x).abs() > tol) {
        roots.push(x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: f64, want: f64, rel: f64) {
        let scale = want.abs().max(1e-300);
        assert!(
            (got - want).abs() <= rel * scale,
            "got {got:e}, want {want:e}"
        );
    }

    #[test]
    fn linear_and_quadratic() {
        assert_eq!(real_roots(&[2.0, -6.0]), vec![3.0]);
        let r = real_roots(&[1.0, -3.0, 2.0]); // (x-1)(x-2)
        assert_eq!(r.len(), 2);
        assert_close(r[0], 1.0, 1e-15);
        assert_close(r[1], 2.0, 1e-15);
        assert!(real_roots(&[1.0, 0.0, 1.0]).is_empty()); // x^2 + 1
    }

    #[test]
    fn catastrophic_cancellation_quadratic() {
        // x^2 - 1e8 x + 1: naive formula destroys the small root.
        let r = real_roots(&[1.0, -1e8, 1.0]);
        assert_eq!(r.len(), 2);
        assert_close(r[0], 1e-8, 1e-12);
        assert_close(r[1], 1e8, 1e-12);
    }

    #[test]
    fn cubic_with_three_roots() {
        // (x+2)(x-1)(x-5) = x^3 - 4x^2 - 7x + 10
        let r = real_roots(&[1.0, -4.0, -7.0, 10.0]);
        assert_eq!(r.len(), 3);
        assert_close(r[0], -2.0, 1e-14);
        assert_close(r[1], 1.0, 1e-14);
        assert_close(r[2], 5.0, 1e-14);
    }

    #[test]
    fn quartic_with_two_real_roots() {
        // (x^2+1)(x-3)(x+4) = x^4 + x^3 - 11x^2 + x - 12
        let r = real_roots(&[1.0, 1.0, -11.0, 1.0, -12.0]);
        assert_eq!(r.len(), 2);
        assert_close(r[0], -4.0, 1e-14);
        assert_close(r[1], 3.0, 1e-14);
    }

    #[test]
    fn double_root_is_found_once() {
        // (x-2)^2 (x+1) = x^3 - 3x^2 + 4
        let r = real_roots(&[1.0, -3.0, 0.0, 4.0]);
        assert_eq!(r.len(), 2);
        assert_close(r[0], -1.0, 1e-12);
        assert_close(r[1], 2.0, 1e-7); // double roots carry sqrt(eps) error
    }

    #[test]
    fn near_triple_cluster_stays_resolved() {
        // z (2z+1)^3 = t (6z+1) with t = 1e-8: one root near -1/2 + cbrt(t/2),
        // one tiny positive root near t. Frozen from an independent
        // high-precision evaluation.
        let t = 1e-8;
        let coeffs = [8.0, 12.0, 6.0, 1.0 - 6.0 * t, -t];
        let r = real_roots(&coeffs);
        assert_eq!(r.len(), 2);
        assert_close(r[0], -0.498_291_002_068_648_7, 1e-10);
        assert_close(r[1], 9.999_999_999_999_988e-9, 1e-10);
    }

    #[test]
    fn roots_satisfy_residual_bound() {
        let coeffs = [8.0, 12.0, 6.0, 1.0 - 0.6, -0.1];
        for root in real_roots(&coeffs) {
            let residual = eval(&coeffs, root).abs();
            assert!(residual <= 8.0 * noise_floor(&coeffs, root));
        }
    }

    #[test]
    fn leading_zeros_are_stripped() {
        let r = real_roots(&[0.0, 0.0, 1.0, -1.0]);
        assert_eq!(r, vec![1.0]);
    }
}
