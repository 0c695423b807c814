//! Variational bound on the length scale `a` from the hydrogen ground
//! state.
//!
//! With the regularized point-charge potential the trial state
//! `psi = N e^{-gamma r}` has energy
//!
//! ```text
//! E(gamma) = gamma^2 / 2m - e^2 gamma + 4 e^2 gamma^3 / (2 gamma + 1/a)^2
//! ```
//!
//! Stationarity in `gamma` clears denominators into a quartic. Solved in
//! the scaled variable `z = a gamma` its coefficients are all O(1),
//!
//! ```text
//! 8 z^4 + 12 z^3 + 6 z^2 + (1 - 6 t) z - t = 0,     t = a m e^2,
//! ```
//!
//! which keeps the root-finding well conditioned for `t` from 1e-8 up to
//! order 1. There is exactly one positive root for every `t > 0` (one sign
//! change in the coefficient sequence), and it is the variational minimum.
//! Because the trial family contains the true `a -> 0` ground state, the
//! minimum is itself an upper bound on the true energy; demanding the
//! induced shift stay below the spectroscopic uncertainty of the hydrogen
//! ground level turns any measured agreement into an upper bound on `a`.
//!
//! Everything here works in natural units (`hbar = c = 1`): energies and
//! `gamma` in MeV, lengths in 1/MeV, `e2` the fine-structure constant.

use crate::constants;
use crate::error::{Error, Result};
use crate::fields::point_charge_potential;
use crate::numeric::{minimize, poly, quad};
use crate::units::{self, Length};

/// Trial-state problem data in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenModel {
    /// Reduced mass of the orbiting charge, MeV.
    pub mass: f64,
    /// Coupling e^2 (the fine-structure constant when physical).
    pub e2: f64,
    /// Length scale of the theory, 1/MeV.
    pub a: f64,
}

impl HydrogenModel {
    pub fn new(mass: f64, e2: f64, a: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("e2", e2), ("a", a)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} = {v:e} must be positive")));
            }
        }
        Ok(Self { mass, e2, a })
    }

    /// Electron-on-proton hydrogen with the given length scale.
    pub fn physical(a: Length) -> Result<Self> {
        Self::new(
            constants::ELECTRON_MASS_MEV,
            constants::FINE_STRUCTURE,
            units::length_to_inverse_energy(a)?,
        )
    }

    /// 1 / (m e^2), the natural orbit size, in 1/MeV.
    pub fn bohr_radius(&self) -> f64 {
        1.0 / (self.mass * self.e2)
    }

    /// The single dimensionless knob `t = a m e^2 = a / bohr_radius`.
    pub fn a_over_bohr(&self) -> f64 {
        self.a * self.mass * self.e2
    }

    /// Whether the scale is deep in the perturbative window (`t < 0.01`),
    /// where the second-order expansion of the minimum is trustworthy.
    pub fn is_perturbative(&self) -> bool {
        self.a_over_bohr() < 0.01
    }

    fn z_quartic(&self) -> [f64; 5] {
        let t = self.a_over_bohr();
        [8.0, 12.0, 6.0, 1.0 - 6.0 * t, -t]
    }
}

fn energy_formula(model: &HydrogenModel, gamma: f64) -> f64 {
    let pole = 2.0 * gamma + 1.0 / model.a;
    gamma * gamma / (2.0 * model.mass) - model.e2 * gamma
        + 4.0 * model.e2 * gamma.powi(3) / (pole * pole)
}

/// Trial-state energy at inverse radius `gamma > 0`, MeV.
pub fn energy(model: &HydrogenModel, gamma: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::domain(format!(
            "gamma = {gamma:e} must be positive (the trial state must be normalizable)"
        )));
    }
    Ok(energy_formula(model, gamma))
}

/// d E / d gamma in closed form (before clearing denominators). Public so
/// the quartic can be validated against it independently.
pub fn energy_derivative(model: &HydrogenModel, gamma: f64) -> f64 {
    let pole = 2.0 * gamma + 1.0 / model.a;
    gamma / model.mass - model.e2
        + 4.0 * model.e2 * gamma * gamma * (2.0 * gamma + 3.0 / model.a) / pole.powi(3)
}

/// Energy recomputed by quadrature instead of the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEnergy {
    /// Total energy, MeV.
    pub energy: f64,
    /// Propagated absolute error estimate from the integrator, MeV.
    pub error_estimate: f64,
    /// The norm integral of the trial state; must be 1 to ~1e-10.
    pub normalization: f64,
}

/// Rebuild `E(gamma)` from its defining radial integrals:
/// the norm and kinetic pieces from `r^2 e^{-2 gamma r}`, the interaction
/// by integrating the trial density against [`point_charge_potential`].
///
/// This shares no algebra with [`energy`]: if the closed form dropped or
/// doubled a term, the two would disagree. Tolerances are set so agreement
/// to 1e-8 relative is expected over `t` from 1e-6 to 0.1.
pub fn energy_quadrature(model: &HydrogenModel, gamma: f64) -> Result<QuadratureEnergy> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::domain(format!(
            "gamma = {gamma:e} must be positive (the trial state must be normalizable)"
        )));
    }
    let a = model.a;
    // e^{-2 gamma r} reaches 1e-26 at r = 30/gamma: truncation is invisible
    // next to the 1e-11 quadrature tolerance.
    let upper = 30.0 / gamma;
    let density = move |r: f64| r * r * (-2.0 * gamma * r).exp();
    let norm_integral = quad::integrate(&density, 0.0, upper, 1e-11)?;
    let interaction = move |r: f64| {
        // point_charge_potential is finite on [0, inf) for a > 0; errors
        // cannot occur for these arguments.
        density(r) * point_charge_potential(a, r).unwrap_or(f64::NAN)
    };
    let interaction_integral = quad::integrate(&interaction, 0.0, upper, 1e-11)?;

    let weight = 4.0 * gamma.powi(3); // |psi|^2 normalization: 4 gamma^3 r^2 e^{-2 gamma r} dr
    let normalization = weight * norm_integral.value;
    let kinetic = gamma * gamma / (2.0 * model.mass) * normalization;
    let potential = weight * model.e2 * interaction_integral.value;
    let energy = kinetic + potential;
    let error_estimate = weight
        * (gamma * gamma / (2.0 * model.mass) * norm_integral.error_estimate
            + model.e2 * interaction_integral.error_estimate);
    Ok(QuadratureEnergy {
        energy,
        error_estimate,
        normalization,
    })
}

/// All real stationary points of `E(gamma)`, ascending, in MeV. Solved via
/// the scaled quartic; for every valid model there are either one or two
/// (the positive minimum, plus for most parameters one negative root of the
/// cleared equation that is not a physical trial state).
pub fn stationarity_roots(model: &HydrogenModel) -> Result<Vec<f64>> {
    let mut roots: Vec<f64> = poly::real_roots(&model.z_quartic())
        .into_iter()
        .map(|z| z / model.a)
        .collect();
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    if !roots.iter().any(|&g| g > 0.0) {
        return Err(Error::Convergence {
            context: "quartic solver found no positive stationary point".into(),
            achieved: f64::NAN,
        });
    }
    Ok(roots)
}

/// Scaled residual of the stationarity quartic at `gamma`:
/// `|P(z)| / sum_k |c_k z^k|` with `z = a gamma`. Zero (to rounding) at
/// true roots; O(1) away from them.
pub fn stationarity_residual(model: &HydrogenModel, gamma: f64) -> f64 {
    let z = model.a * gamma;
    let coeffs = model.z_quartic();
    let p = poly::eval(&coeffs, z).abs();
    let mut scale = 0.0_f64;
    for &c in &coeffs {
        scale = scale * z.abs() + c.abs();
    }
    p / scale.max(f64::MIN_POSITIVE)
}

/// Roots of the stationarity condition truncated at first order in `a`:
/// `6 a gamma^2 + (1 - 6 t) gamma - m e^2 = 0`, returned as
/// `(m e^2, -1/(6a))` which solve it exactly (its discriminant is the
/// perfect square `(1 + 6t)^2`).
///
/// The negative member is a property of the truncation only: it does not
/// solve the full quartic, whose actual negative root sits near `-1/(2a)`
/// for small `t`. Use [`stationarity_roots`] for the real thing.
pub fn first_order_roots(model: &HydrogenModel) -> (f64, f64) {
    (model.mass * model.e2, -1.0 / (6.0 * model.a))
}

/// Everything [`minimize`] learns about the variational landscape.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalResult {
    /// Real stationary points, ascending, MeV.
    pub roots: Vec<f64>,
    /// `E` evaluated at each of `roots` (even unphysical negative ones).
    pub energies: Vec<f64>,
    /// The positive stationary point: the variational minimum, MeV.
    pub gamma_star: f64,
    /// The same minimum located independently by bracketing search.
    pub gamma_star_bracket: f64,
    /// Minimum energy `E(gamma_star)`, MeV.
    pub e_star: f64,
    /// Leading-order minimizer `m e^2` (the `a -> 0` hydrogen value), MeV.
    pub perturbative_gamma: f64,
    /// Second-order expansion of the minimum energy,
    /// `-(m e^4 / 2)(1 - 8 t^2)`, MeV.
    pub perturbative_energy: f64,
}

/// Locate the variational minimum two independent ways and package the
/// surrounding diagnostics.
///
/// The quartic root is the physics answer (polished to full precision); the
/// derivative-free bracketing minimizer re-derives it from nothing but
/// `E(gamma)` evaluations. They are cross-checked here against a loose
/// internal tolerance to catch gross breakage; callers wanting the sharp
/// statement (agreement to 1e-10 relative) should compare the two fields.
pub fn minimize(model: &HydrogenModel) -> Result<VariationalResult> {
    let roots = stationarity_roots(model)?;
    let energies: Vec<f64> = roots.iter().map(|&g| energy_formula(model, g)).collect();
    let gamma_star = *roots.iter().find(|&&g| g > 0.0).unwrap();
    let e_star = energy_formula(model, gamma_star);

    let scale = model.mass * model.e2;
    let objective = |g: f64| energy_formula(model, g);
    let gamma_star_bracket = minimize::bracket_minimize(&objective, 1e-3 * scale, 10.0 * scale)?;
    let gap = (gamma_star - gamma_star_bracket).abs() / gamma_star;
    if gap > 1e-6 {
        return Err(Error::Convergence {
            context: "stationary root and bracketing minimizer disagree".into(),
            achieved: gap,
        });
    }

    let t = model.a_over_bohr();
    let e0 = -0.5 * model.mass * model.e2 * model.e2;
    Ok(VariationalResult {
        roots,
        energies,
        gamma_star,
        gamma_star_bracket,
        e_star,
        perturbative_gamma: scale,
        perturbative_energy: e0 * (1.0 - 8.0 * t * t),
    })
}

/// Default relative uncertainty assigned to the hydrogen ground-state
/// energy when bounding `a`: the value used throughout the examples and the
/// book chapter, where its provenance from modern hydrogen spectroscopy is
/// discussed.
pub const SIGMA_REL_DEFAULT: f64 = 8.83e-8;

/// An upper bound on `a` (and the photon-mass floor it implies).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    /// The relative energy uncertainty the bound was derived from.
    pub sigma_rel: f64,
    /// Largest `a` compatible with it, femtometres.
    pub a_max_fm: f64,
    /// Smallest heavy-mode mass compatible with it, MeV.
    pub mass_min_mev: f64,
}

/// Turn a relative uncertainty on the hydrogen ground-state energy into a
/// bound on the length scale.
///
/// The leading shift of the variational minimum is `8 t^2` relative
/// (`t = a / bohr_radius`), so `8 t^2 <= sigma_rel` gives
/// `a <= (r_B / 2) sqrt(sigma_rel / 2)`.
pub fn bound_a(sigma_rel: f64) -> Result<BoundResult> {
    if !(sigma_rel.is_finite() && sigma_rel > 0.0 && sigma_rel < 1.0) {
        return Err(Error::domain(format!(
            "sigma_rel = {sigma_rel:e} must lie in (0, 1)"
        )));
    }
    let bohr_fm = constants::BOHR_RADIUS_M * 1e15;
    let a_max_fm = 0.5 * bohr_fm * (0.5 * sigma_rel).sqrt();
    let mass_min_mev = constants::HBAR_C_MEV_FM / a_max_fm;
    Ok(BoundResult {
        sigma_rel,
        a_max_fm,
        mass_min_mev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::LengthUnit;
    use rand::{Rng, SeedableRng};

    fn rel(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs().max(1e-300)
    }

    fn natural(t: f64) -> HydrogenModel {
        // m = e2 = 1 makes a == t and gamma dimensionless.
        HydrogenModel::new(1.0, 1.0, t).unwrap()
    }

    #[test]
    fn energy_closed_form_spot_value() {
        // At m = e2 = a = 1, gamma = 1/2: 1/8 - 1/2 + 4*(1/8)/4 = -1/4.
        let e = energy(&natural(1.0), 0.5).unwrap();
        assert!((e + 0.25).abs() < 1e-16, "{e:e}");
        assert!(energy(&natural(1.0), 0.0).is_err());
        assert!(energy(&natural(1.0), -1.0).is_err());
    }

    #[test]
    fn stationary_roots_match_frozen_values() {
        let roots = stationarity_roots(&natural(0.1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(rel(roots[0], -2.278_880_494_010_118) < 1e-12);
        assert!(rel(roots[1], 0.933_529_524_988_769_4) < 1e-12);
        for &g in &roots {
            assert!(stationarity_residual(&natural(0.1), g) < 1e-14);
        }
        // Residual is O(1) away from roots.
        assert!(stationarity_residual(&natural(0.1), 0.5) > 1e-3);
    }

    #[test]
    fn minimum_matches_frozen_values() {
        let r = minimize(&natural(0.1)).unwrap();
        assert!(rel(r.gamma_star, 0.933_529_524_988_769_4) < 1e-12);
        assert!(rel(r.e_star, -0.474_683_072_100_749_4) < 1e-12);
        assert!(rel(r.gamma_star_bracket, r.gamma_star) < 1e-9);

        let r = minimize(&natural(0.01)).unwrap();
        assert!(rel(r.gamma_star, 0.998_864_191_649_017_2) < 1e-12);
        assert!(rel(r.e_star, -0.499_616_178_946_991_7) < 1e-12);
        assert!(rel(r.gamma_star_bracket, r.gamma_star) < 1e-9);
        assert!(rel(r.perturbative_gamma, 1.0) < 1e-15);
    }

    #[test]
    fn rejected_branch_has_positive_energy() {
        // The negative root of the cleared equation is not a trial state;
        // its formula value is positive and enormous compared to the
        // minimum, which is why it never competes.
        let r = minimize(&natural(0.1)).unwrap();
        assert!(rel(r.energies[0], 3.277_187_712_219_573) < 1e-12);
        assert!(r.energies[0] > 0.0 && r.e_star < 0.0);
    }

    #[test]
    fn first_order_roots_solve_only_the_truncated_equation() {
        let model = natural(0.1);
        let (plus, minus) = first_order_roots(&model);
        assert!(rel(plus, 1.0) < 1e-15); // m e^2
        assert!(rel(minus, -1.0 / 0.6) < 1e-15); // -1/(6a)
        // Both satisfy 6 a g^2 + (1 - 6t) g - m e^2 = 0 exactly.
        let t = model.a_over_bohr();
        for g in [plus, minus] {
            let residual = 6.0 * model.a * g * g + (1.0 - 6.0 * t) * g - 1.0;
            assert!(residual.abs() < 1e-14, "{residual:e}");
        }
        // The negative one does NOT satisfy the full quartic: at z = -1/6
        // the scaled residual is 4/81 over a scale of ~0.4.
        assert!(stationarity_residual(&model, minus) > 0.1);
        // The quartic's true negative root sits near -1/(2a) instead, with
        // offset (t/2)^(1/3)/a: frozen at t = 1e-8.
        let deep = natural(1e-8);
        let roots = stationarity_roots(&deep).unwrap();
        assert!(rel(roots[0], -4.982_910_020_686_487e7) < 1e-10, "{:e}", roots[0]);
    }

    #[test]
    fn quartic_is_the_cleared_derivative() {
        // m a (dE/dgamma) (2 a gamma + 1)^3 must equal the z-quartic
        // everywhere, not just at roots.
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for &t in &[0.3, 0.01, 1e-5] {
            let model = natural(t);
            let coeffs = model.z_quartic();
            for _ in 0..20 {
                let gamma: f64 = rng.gen_range(0.05..3.0);
                let z = model.a * gamma;
                let lhs = model.mass
                    * model.a
                    * energy_derivative(&model, gamma)
                    * (2.0 * model.a * gamma + 1.0).powi(3);
                let rhs = poly::eval(&coeffs, z);
                let mut scale = 0.0_f64;
                for &c in &coeffs {
                    scale = scale * z.abs() + c.abs();
                }
                assert!(
                    (lhs - rhs).abs() <= 1e-10 * scale,
                    "t = {t}, gamma = {gamma}: {lhs:e} vs {rhs:e}"
                );
            }
        }
    }

    #[test]
    fn quadrature_rebuild_agrees_with_closed_form() {
        for &t in &[1e-6, 1e-3, 0.1] {
            let model = natural(t);
            for &gamma in &[0.5, 1.0, 2.3] {
                let q = energy_quadrature(&model, gamma).unwrap();
                let closed = energy(&model, gamma).unwrap();
                assert!(
                    rel(q.energy, closed) < 1e-8,
                    "t = {t}, gamma = {gamma}: {:e} vs {closed:e}",
                    q.energy
                );
                assert!((q.normalization - 1.0).abs() < 1e-10);
                assert!(q.error_estimate >= 0.0);
            }
        }
    }

    #[test]
    fn perturbative_gap_scales_cubically() {
        // E* - E_pert = -16 t^3 (1 + O(t)) in natural units.
        let r3 = minimize(&natural(1e-3)).unwrap();
        let gap3 = r3.e_star - r3.perturbative_energy;
        assert!(rel(gap3, -16.0 * 1e-9) < 2e-3, "{gap3:e}");
        let r4 = minimize(&natural(1e-4)).unwrap();
        let gap4 = r4.e_star - r4.perturbative_energy;
        assert!(rel(gap4, -16.0 * 1e-12) < 2e-4, "{gap4:e}");
    }

    #[test]
    fn physical_model_recovers_hydrogen() {
        let model = HydrogenModel::physical(Length::new(1.0, LengthUnit::Femtometre).unwrap())
            .unwrap();
        assert!(model.is_perturbative());
        let r = minimize(&model).unwrap();
        assert!(rel(r.gamma_star, 3.728_939_484_714_171e-3) < 1e-11);
        // In eV: within 4e-8 relative of the unperturbed -13.6057 eV level.
        let e_ev = r.e_star * 1e6;
        assert!(rel(e_ev, -13.605_693_084_203_4) < 1e-10, "{e_ev}");
        assert!(rel(e_ev, -13.605_693_123_1) < 1e-8);
    }

    #[test]
    fn bound_matches_frozen_values() {
        let b = bound_a(SIGMA_REL_DEFAULT).unwrap();
        assert!(rel(b.a_max_fm, 5.559_509_686_519_194) < 1e-12, "{:e}", b.a_max_fm);
        assert!(rel(b.mass_min_mev, 35.493_594_134_475_97) < 1e-12);
        // The two halves are one statement: a_max * m_min = hbar c.
        assert!(rel(b.a_max_fm * b.mass_min_mev, constants::HBAR_C_MEV_FM) < 1e-14);
        // Tighter uncertainty, tighter bound.
        let tighter = bound_a(SIGMA_REL_DEFAULT / 100.0).unwrap();
        assert!(rel(tighter.a_max_fm, b.a_max_fm / 10.0) < 1e-12);
        assert!(bound_a(0.0).is_err());
        assert!(bound_a(1.0).is_err());
    }

    #[test]
    fn model_validation() {
        assert!(HydrogenModel::new(0.0, 1.0, 1.0).is_err());
        assert!(HydrogenModel::new(1.0, -1.0, 1.0).is_err());
        assert!(HydrogenModel::new(1.0, 1.0, f64::INFINITY).is_err());
    }
}
