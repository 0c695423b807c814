//! Independent numerical cross-checks of the closed-form solutions.
//!
//! Trusting a formula because it was typed twice is not verification. The
//! routines here rebuild the cylinder potential from its differential
//! equation with a plain RK4 integrator and test the Bessel branches against
//! the modified Helmholtz equation with finite differences. They share no
//! code path with the production evaluators beyond f64 arithmetic: the
//! integrator carries its own power-series I0/I1 and never touches the
//! scaled-ratio machinery it is checking.

use crate::bessel;
use crate::error::{Error, Result};
use crate::fields::{CylinderGeometry, CylinderSolution};

/// Power-series I0, local to the oracle. Adequate (and exact to rounding)
/// for the moderate arguments the integrator is restricted to.
fn series_i0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > f64::EPSILON * sum {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

/// Power-series I1, same provenance as [`series_i0`].
fn series_i1(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    let mut k = 1.0;
    while term.abs() > f64::EPSILON * sum.abs() {
        term *= q / (k * (k + 1.0));
        sum += term;
        k += 1.0;
    }
    sum
}

/// Result of re-deriving the interior potential from its ODE.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeRun {
    /// Length scale used, metres.
    pub a: f64,
    /// Radial grid, metres, from just off the axis to the shell.
    pub grid: Vec<f64>,
    /// RK4 solution on the grid, volts.
    pub phi_numeric: Vec<f64>,
    /// Closed-form values on the same grid, volts.
    pub phi_closed: Vec<f64>,
    /// Largest pointwise relative difference.
    pub max_rel_err: f64,
}

/// Maximum pointwise relative error the integrator accepts before reporting
/// a convergence failure.
pub const ODE_TOLERANCE: f64 = 1e-6;

/// Re-derive the interior potential by integrating the second-order radial
/// equation it satisfies,
/// `phi'' + phi'/r = A I0(r/a)`, `A = V (1 - eps) / (a^2 I0(R/a))`,
/// outward from a series-consistent start near the axis, and compare against
/// the closed form pointwise.
///
/// `steps >= 1000` is required: fewer steps cannot reach the tolerance and
/// would only measure the integrator, not the formula. The unscaled source
/// coefficient restricts the check to moderate aspect ratios (roughly
/// `R/a <= 300`); the well-conditioned regime is `R/a <= 50`.
pub fn integrate_radial(
    solution: &CylinderSolution,
    geometry: &CylinderGeometry,
    steps: usize,
) -> Result<OdeRun> {
    if steps < 1000 {
        return Err(Error::domain(format!(
            "steps = {steps} too coarse for a meaningful check; need >= 1000"
        )));
    }
    if solution.v_total() == 0.0 {
        return Err(Error::domain(
            "v_total = 0 makes every relative error undefined",
        ));
    }
    let a = solution.a();
    let big_r = geometry.outer_radius();
    let x_big = big_r / a;
    if x_big > 300.0 {
        return Err(Error::domain(format!(
            "R/a = {x_big:.1} too large for the unscaled source term; keep it <= 300"
        )));
    }

    let i0_big = series_i0(x_big);
    // phi(r) = eps V + c1 I0(r/a), the closed form split so the start values
    // come from the regular-origin series rather than a subtraction.
    let c1 = solution.v_total() * solution.epsilon().one_minus() / i0_big;
    let eps_v = solution.v_total() * solution.epsilon().value();
    let source = c1 / (a * a); // A = V(1-eps) / (a^2 I0(R/a))

    let r_min = big_r / steps as f64;
    let h = (big_r - r_min) / steps as f64;

    let mut grid = Vec::with_capacity(steps + 1);
    let mut phi_numeric = Vec::with_capacity(steps + 1);
    let mut phi_closed = Vec::with_capacity(steps + 1);

    // Series-consistent start: phi and phi' from the small-argument series,
    // standing in for the r = 0 regularity condition phi'(0) = 0.
    let mut phi = eps_v + c1 * series_i0(r_min / a);
    let mut psi = c1 * series_i1(r_min / a) / a; // phi'
    let rhs = |r: f64, psi: f64| source * series_i0(r / a) - psi / r;

    let mut max_rel_err = 0.0_f64;
    for i in 0..=steps {
        let r = r_min + h * i as f64;
        let closed = eps_v + c1 * series_i0(r / a);
        let rel = (phi - closed).abs() / closed.abs().max(f64::MIN_POSITIVE);
        max_rel_err = max_rel_err.max(rel);
        grid.push(r);
        phi_numeric.push(phi);
        phi_closed.push(closed);
        if i == steps {
            break;
        }

        // Classical RK4 on the first-order system (phi, psi).
        let k1_phi = psi;
        let k1_psi = rhs(r, psi);
        let k2_phi = psi + 0.5 * h * k1_psi;
        let k2_psi = rhs(r + 0.5 * h, psi + 0.5 * h * k1_psi);
        let k3_phi = psi + 0.5 * h * k2_psi;
        let k3_psi = rhs(r + 0.5 * h, psi + 0.5 * h * k2_psi);
        let k4_phi = psi + h * k3_psi;
        let k4_psi = rhs(r + h, psi + h * k3_psi);
        phi += h / 6.0 * (k1_phi + 2.0 * k2_phi + 2.0 * k3_phi + k4_phi);
        psi += h / 6.0 * (k1_psi + 2.0 * k2_psi + 2.0 * k3_psi + k4_psi);
    }

    if max_rel_err > ODE_TOLERANCE {
        return Err(Error::Convergence {
            context: format!(
                "RK4 re-derivation disagrees with the closed form at R/a = {x_big:.1}"
            ),
            achieved: max_rel_err,
        });
    }
    Ok(OdeRun {
        a,
        grid,
        phi_numeric,
        phi_closed,
        max_rel_err,
    })
}

/// Which homogeneous radial solution to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelmholtzBranch {
    /// I0(r/a), regular at the origin, grows outward.
    FirstKind,
    /// K0(r/a), singular at the origin, decays outward.
    SecondKind,
}

/// Maximum scaled residual of `U = a^2 (U'' + U'/r)` over the samples, for a
/// caller-supplied U. Fourth-order five-point stencils with step `0.01 a`;
/// samples must keep `r - 2h > 0`.
pub fn helmholtz_residual_of(
    a: f64,
    r_samples: &[f64],
    u: impl Fn(f64) -> Result<f64>,
) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::domain(format!("length scale a = {a:e} must be positive")));
    }
    if r_samples.is_empty() {
        return Err(Error::domain("no sample radii given"));
    }
    let h = 0.01 * a;
    let mut worst = 0.0_f64;
    for &r in r_samples {
        if !(r.is_finite() && r > 2.5 * h) {
            return Err(Error::domain(format!(
                "sample radius {r:e} too close to the origin for the stencil (need r > {:e})",
                2.5 * h
            )));
        }
        let um2 = u(r - 2.0 * h)?;
        let um1 = u(r - h)?;
        let u0 = u(r)?;
        let up1 = u(r + h)?;
        let up2 = u(r + 2.0 * h)?;
        // Fourth-order central differences.
        let d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h);
        let d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
        let residual = (u0 - a * a * (d2 + d1 / r)).abs() / u0.abs().max(f64::MIN_POSITIVE);
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// Check the production Bessel evaluators against the defining equation
/// `U = a^2 (U'' + U'/r)` (the modified Helmholtz operator in cylindrical
/// symmetry). Returns the worst scaled residual over the samples.
pub fn check_modified_helmholtz(
    a: f64,
    r_samples: &[f64],
    branch: HelmholtzBranch,
) -> Result<f64> {
    match branch {
        HelmholtzBranch::FirstKind => helmholtz_residual_of(a, r_samples, |r| bessel::i0(r / a)),
        HelmholtzBranch::SecondKind => helmholtz_residual_of(a, r_samples, |r| bessel::k0(r / a)),
    }
}

/// CSV header for serialized ODE runs; pinned schema.
pub const ODE_CSV_HEADER: &str = "r_m,phi_numeric_V,phi_closed_V,rel_err";

impl OdeRun {
    /// Serialize with a caller-supplied float formatter.
    pub fn to_csv(&self, mut fmt: impl FnMut(f64) -> String) -> String {
        let mut out = String::from(ODE_CSV_HEADER);
        out.push('\n');
        for i in 0..self.grid.len() {
            let rel = (self.phi_numeric[i] - self.phi_closed[i]).abs()
                / self.phi_closed[i].abs().max(f64::MIN_POSITIVE);
            out.push_str(&fmt(self.grid[i]));
            out.push(',');
            out.push_str(&fmt(self.phi_numeric[i]));
            out.push(',');
            out.push_str(&fmt(self.phi_closed[i]));
            out.push(',');
            out.push_str(&fmt(rel));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Epsilon;

    fn setup(r_over_a: f64, eps: f64) -> (CylinderSolution, CylinderGeometry) {
        let geometry = CylinderGeometry::new(1.0, 0.5, 0.25).unwrap();
        let solution =
            CylinderSolution::new(1.0 / r_over_a, 1.0, Epsilon::new(eps).unwrap()).unwrap();
        (solution, geometry)
    }

    #[test]
    fn rk4_reproduces_the_closed_form() {
        let (solution, geometry) = setup(10.0, 0.5);
        let run = integrate_radial(&solution, &geometry, 20_000).unwrap();
        assert!(run.max_rel_err < 1e-9, "max rel err {:e}", run.max_rel_err);
        assert_eq!(run.grid.len(), 20_001);
        assert!((run.grid.last().unwrap() - 1.0).abs() < 1e-12);
    }

    /// Extract the achieved error whether or not it cleared the tolerance:
    /// the order measurement cares about ratios, not the absolute level.
    fn achieved_err(
        solution: &CylinderSolution,
        geometry: &CylinderGeometry,
        steps: usize,
    ) -> f64 {
        match integrate_radial(solution, geometry, steps) {
            Ok(run) => run.max_rel_err,
            Err(Error::Convergence { achieved, .. }) => achieved,
            Err(e) => panic!("unexpected error: {e}"),
        }
    }

    #[test]
    fn rk4_converges_at_fourth_order() {
        // Halving the step should shrink the error by ~16. Measured on a
        // stiff-ish aspect ratio so the error is far above rounding.
        let (solution, geometry) = setup(30.0, 0.5);
        let e1 = achieved_err(&solution, &geometry, 1000);
        let e2 = achieved_err(&solution, &geometry, 2000);
        let e4 = achieved_err(&solution, &geometry, 4000);
        let order12 = (e1 / e2).log2();
        let order24 = (e2 / e4).log2();
        assert!(
            (3.5..=4.5).contains(&order12),
            "order {order12:.2} from errors {e1:e} -> {e2:e}"
        );
        assert!(
            (3.5..=4.5).contains(&order24),
            "order {order24:.2} from errors {e2:e} -> {e4:e}"
        );
    }

    #[test]
    fn ode_rejects_coarse_grids_and_extreme_aspect() {
        let (solution, geometry) = setup(10.0, 0.5);
        assert!(matches!(
            integrate_radial(&solution, &geometry, 999),
            Err(Error::Domain(_))
        ));
        let (solution, geometry) = setup(400.0, 0.5);
        assert!(integrate_radial(&solution, &geometry, 2000).is_err());
    }

    #[test]
    fn helmholtz_residual_is_tiny_for_both_kinds() {
        // Samples start at r = a/2: the K0 derivatives grow like 1/r^6 and
        // the fixed stencil step loses accuracy closer to the origin.
        let a = 0.7;
        let samples: Vec<f64> = (2..=20).map(|i| a * 0.25 * i as f64).collect();
        let first = check_modified_helmholtz(a, &samples, HelmholtzBranch::FirstKind).unwrap();
        let second = check_modified_helmholtz(a, &samples, HelmholtzBranch::SecondKind).unwrap();
        assert!(first < 1e-9, "I0 residual {first:e}");
        assert!(second < 1e-6, "K0 residual {second:e}");
    }

    #[test]
    fn helmholtz_stencil_degrades_near_the_origin_for_k0() {
        // Documented limitation: at r = a/4 the truncation term
        // h^4 K0^(6)/90 ~ 1e-5 relative. The check is still honest, it just
        // is not a tight test of K0 there.
        let a = 0.7;
        let res = check_modified_helmholtz(a, &[0.25 * a], HelmholtzBranch::SecondKind).unwrap();
        assert!(res > 1e-6 && res < 1e-4, "{res:e}");
    }

    #[test]
    fn helmholtz_rejects_non_solutions() {
        // A constant is not a solution: U - a^2 * 0 = U, scaled residual 1.
        let a = 0.5;
        let res = helmholtz_residual_of(a, &[a, 2.0 * a], |_| Ok(1.0)).unwrap();
        assert!((res - 1.0).abs() < 1e-12);
        // ln(r) solves the Laplace part exactly, leaving residual 1 as well.
        let res_log = helmholtz_residual_of(a, &[3.0 * a], |r| Ok(r.ln())).unwrap();
        assert!((res_log - 1.0).abs() < 1e-6, "{res_log:e}");
    }

    #[test]
    fn helmholtz_guards_the_stencil() {
        let a = 1.0;
        assert!(check_modified_helmholtz(a, &[0.02], HelmholtzBranch::FirstKind).is_err());
        assert!(check_modified_helmholtz(a, &[], HelmholtzBranch::FirstKind).is_err());
    }

    #[test]
    fn csv_schema_is_pinned() {
        let (solution, geometry) = setup(5.0, 0.5);
        let run = integrate_radial(&solution, &geometry, 1000).unwrap();
        let csv = run.to_csv(|v| format!("{v:e}"));
        assert!(csv.starts_with("r_m,phi_numeric_V,phi_closed_V,rel_err\n"));
        assert_eq!(csv.lines().count(), 1002);
    }
}
