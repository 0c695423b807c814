//! Ion interferometry inside a nested charged cylinder: predicting the
//! differential phase between two arms and inverting a measured phase into
//! the theory's length scale `a`.
//!
//! Two coherent ion beams travel parallel to the cylinder axis at radii
//! `r0` and `r0 + s`. Pulsing the outer shell by `delta_v` for the transit
//! time `tau` imprints a relative phase
//!
//! ```text
//! delta_phi = (q tau / hbar) delta_v (1 - eps) [I0(x1) - I0(x0)] / I0(X)
//! ```
//!
//! with `x0 = r0/a`, `x1 = (r0+s)/a`, `X = R/a`. In any realistic setup
//! these arguments are in the hundreds, so the expression is evaluated
//! through exponentially scaled Bessel functions; every exponent that
//! appears is nonpositive and nothing can overflow.
//!
//! The estimator inverts the dominant-arm asymptotic form of the same
//! expression (I0(x) ~ e^x / sqrt(2 pi x), near arm neglected, which is
//! exponentially justified for s >> a): that form is loglinear in `1/a`
//! and solves in closed form. [`phase_difference_asymptotic`] evaluates
//! exactly the model the estimator inverts, so the pair form an identity;
//! the gap between it and [`phase_difference`] measures the quality of the
//! single-arm approximation itself (it decays like `e^{-s/a}`).

use rayon::prelude::*;

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::fields::{CylinderGeometry, Epsilon};
use crate::{bessel, constants};

/// A beam of charged particles traversing the cylinder.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamSpec {
    label: String,
    speed: f64,
    segment_length: f64,
    charge: f64,
}

impl BeamSpec {
    /// `speed` in m/s, `segment_length` (the driven section) in m, `charge`
    /// in coulombs, nonzero; its sign carries through to the phase.
    pub fn new(
        label: impl Into<String>,
        speed: f64,
        segment_length: f64,
        charge: f64,
    ) -> Result<Self> {
        if !(speed.is_finite() && speed > 0.0) {
            return Err(Error::domain(format!("speed {speed:e} must be positive")));
        }
        if !(segment_length.is_finite() && segment_length > 0.0) {
            return Err(Error::domain(format!(
                "segment length {segment_length:e} must be positive"
            )));
        }
        if !(charge.is_finite() && charge != 0.0) {
            return Err(Error::domain(format!(
                "charge {charge:e} must be finite and nonzero"
            )));
        }
        Ok(Self {
            label: label.into(),
            speed,
            segment_length,
            charge,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn segment_length(&self) -> f64 {
        self.segment_length
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    /// Transit time of the driven section, seconds.
    pub fn time_of_flight(&self) -> f64 {
        self.segment_length / self.speed
    }
}

/// Drive settings and the measured (or hypothesized) phase response.
///
/// The static pedestal `phase_offset` and the ground potential
/// `ground_offset` are bookkeeping fields only: both cancel out of every
/// difference this module computes, and no function reads them. They exist
/// so a serialized plan can carry the full experimental record.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivePlan {
    delta_v: f64,
    delta_phi: f64,
    epsilon: Epsilon,
    pub phase_offset: Option<f64>,
    pub ground_offset: Option<f64>,
}

impl DrivePlan {
    /// `delta_v` in volts (positive), `delta_phi` in radians (nonnegative;
    /// strictly positive is required before estimating `a`).
    pub fn new(delta_v: f64, delta_phi: f64, epsilon: Epsilon) -> Result<Self> {
        if !(delta_v.is_finite() && delta_v > 0.0) {
            return Err(Error::domain(format!(
                "drive delta_v {delta_v:e} must be positive"
            )));
        }
        if !(delta_phi.is_finite() && delta_phi >= 0.0) {
            return Err(Error::domain(format!(
                "phase delta_phi {delta_phi:e} must be finite and >= 0"
            )));
        }
        Ok(Self {
            delta_v,
            delta_phi,
            epsilon,
            phase_offset: None,
            ground_offset: None,
        })
    }

    pub fn delta_v(&self) -> f64 {
        self.delta_v
    }

    pub fn delta_phi(&self) -> f64 {
        self.delta_phi
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }
}

/// A named experimental configuration: geometry, beam, and drive amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub geometry: CylinderGeometry,
    pub beam: BeamSpec,
    pub delta_v: f64,
}

/// Published reference configurations.
///
/// * `"H+"`: protons at 311 m/s, arms at 0.244 m and 0.2504 m.
/// * `"Cs+"`: caesium ions at 27 m/s, arms at 0.249 m and 0.24956 m.
///
/// Both use a 0.27 m outer shell, a 1 m driven section, and a 400 kV pulse.
pub fn preset(name: &str) -> Result<Experiment> {
    let q = constants::ELEMENTARY_CHARGE;
    let (speed, r0, s) = match name {
        "H+" => (311.0, 0.244, 6.4e-3),
        "Cs+" => (27.0, 0.249, 0.56e-3),
        other => {
            return Err(Error::domain(format!(
                "unknown preset {other:?}; available: \"H+\", \"Cs+\""
            )))
        }
    };
    Ok(Experiment {
        geometry: CylinderGeometry::new(0.27, r0, s)?,
        beam: BeamSpec::new(name, speed, 1.0, q)?,
        delta_v: 4e5,
    })
}

fn check_a(a: f64) -> Result<()> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::domain(format!("length scale a = {a:e} must be positive")));
    }
    Ok(())
}

/// Differential phase between the two arms for a given length scale `a`,
/// radians. Exact two-arm expression, scaled-Bessel evaluation: safe for
/// `R/a` at least up to 1e4. Zero exactly when the arms coincide (s = 0) or
/// the shielding is perfect (eps = 1).
pub fn phase_difference(
    geometry: &CylinderGeometry,
    beam: &BeamSpec,
    a: f64,
    plan: &DrivePlan,
) -> Result<f64> {
    check_a(a)?;
    let x0 = geometry.beam_radius() / a;
    let x1 = geometry.far_arm_radius() / a;
    let x_big = geometry.outer_radius() / a;
    // [I0(x1) - I0(x0)] / I0(X) with every exponential written explicitly:
    // all three exponents are <= 0, so nothing overflows.
    let lead = bessel::i0e(x1)? / bessel::i0e(x_big)? * (x1 - x_big).exp();
    let near = bessel::i0e(x0)? / bessel::i0e(x1)? * (x0 - x1).exp();
    let ratio = lead * (1.0 - near);
    let kick = beam.charge() * beam.time_of_flight() / HBAR
        * plan.delta_v()
        * plan.epsilon().one_minus();
    Ok(kick * ratio)
}

/// Differential phase in the single-arm asymptotic model, radians:
///
/// ```text
/// delta_phi ~ (q tau / hbar) delta_v (1 - eps) e^{(x1 - X)} sqrt(X / x1)
/// ```
///
/// This keeps only the far arm and replaces I0 by its leading asymptote.
/// It is the exact model [`estimate_a`] inverts: feeding its output back in
/// reproduces the measured phase identically. Against [`phase_difference`]
/// it is accurate up to relative corrections of order `e^{-s/a}` (the
/// neglected near arm) and `1/x` (the asymptote).
pub fn phase_difference_asymptotic(
    geometry: &CylinderGeometry,
    beam: &BeamSpec,
    a: f64,
    plan: &DrivePlan,
) -> Result<f64> {
    check_a(a)?;
    let x1 = geometry.far_arm_radius() / a;
    let x_big = geometry.outer_radius() / a;
    let kick = beam.charge() * beam.time_of_flight() / HBAR
        * plan.delta_v()
        * plan.epsilon().one_minus();
    Ok(kick * (x1 - x_big).exp() * (x_big / x1).sqrt())
}

/// Invert a measured phase into the length scale `a`, metres.
///
/// Closed-form inversion of the single-arm asymptotic model:
///
/// ```text
/// a = (R - r1) / [ ln(1-eps) - ln(hbar/(q tau)) - ln(dphi/dV) - ln(r1/R)/2 ]
/// ```
///
/// with `r1 = r0 + s`. All logarithms are taken separately, so the result
/// is exact even when `1 - eps` or `dphi/dV` individually underflow any
/// direct product. A nonpositive denominator means no positive length
/// scale reproduces the inputs under this model; that returns the
/// dedicated non-physical error so parameter sweeps can mask it.
pub fn estimate_a(
    geometry: &CylinderGeometry,
    beam: &BeamSpec,
    plan: &DrivePlan,
) -> Result<f64> {
    if plan.epsilon().one_minus() == 0.0 {
        return Err(Error::domain(
            "eps = 1 exactly: a perfectly shielded interior produces no phase to invert",
        ));
    }
    if plan.delta_phi() <= 0.0 {
        return Err(Error::domain(format!(
            "delta_phi {:e} must be positive to estimate a",
            plan.delta_phi()
        )));
    }
    let r1 = geometry.far_arm_radius();
    let big_r = geometry.outer_radius();
    let tau = beam.time_of_flight();
    let denominator = plan.epsilon().ln_one_minus()
        - (HBAR / (beam.charge().abs() * tau)).ln()
        - (plan.delta_phi() / plan.delta_v()).ln()
        - 0.5 * (r1 / big_r).ln();
    if denominator <= 0.0 {
        return Err(Error::NonPhysical(format!(
            "inversion denominator {denominator:.6} is not positive: the measured phase is \
             too large (or the shielding too leaky) for any positive length scale"
        )));
    }
    Ok((big_r - r1) / denominator)
}

/// The length scale translated into an effective photon mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PodolskyScale {
    /// Length scale, metres.
    pub a_m: f64,
    /// hbar / (a c), kilograms.
    pub mass_kg: f64,
    /// The same mass in electronvolts (mass energy / e).
    pub mass_ev: f64,
}

/// Convert a length scale into the photon mass it implies.
pub fn photon_mass(a: f64) -> Result<PodolskyScale> {
    check_a(a)?;
    let mass_kg = HBAR / (a * constants::SPEED_OF_LIGHT);
    let mass_ev =
        mass_kg * constants::SPEED_OF_LIGHT * constants::SPEED_OF_LIGHT / constants::ELECTRON_VOLT_J;
    Ok(PodolskyScale { a_m: a, mass_kg, mass_ev })
}

/// Rectangular sweep domain: linear in `epsilon`, logarithmic in
/// `delta_phi`. Endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub epsilon_min: f64,
    pub epsilon_max: f64,
    pub epsilon_count: usize,
    pub delta_phi_min: f64,
    pub delta_phi_max: f64,
    pub delta_phi_count: usize,
}

impl Default for GridSpec {
    /// 100 x 100 cells over eps in [0.001, 0.999], delta_phi in [1e-4, 1e-2].
    fn default() -> Self {
        Self {
            epsilon_min: 0.001,
            epsilon_max: 0.999,
            epsilon_count: 100,
            delta_phi_min: 1e-4,
            delta_phi_max: 1e-2,
            delta_phi_count: 100,
        }
    }
}

impl GridSpec {
    fn validate(&self) -> Result<()> {
        let eps_ok = self.epsilon_min > 0.0
            && self.epsilon_min <= self.epsilon_max
            && self.epsilon_max < 1.0;
        if !eps_ok {
            return Err(Error::domain(format!(
                "epsilon range [{:e}, {:e}] must satisfy 0 < min <= max < 1",
                self.epsilon_min, self.epsilon_max
            )));
        }
        let phi_ok = self.delta_phi_min > 0.0
            && self.delta_phi_min <= self.delta_phi_max
            && self.delta_phi_max.is_finite();
        if !phi_ok {
            return Err(Error::domain(format!(
                "delta_phi range [{:e}, {:e}] must satisfy 0 < min <= max",
                self.delta_phi_min, self.delta_phi_max
            )));
        }
        if self.epsilon_count < 1 || self.delta_phi_count < 1 {
            return Err(Error::domain("grid counts must be at least 1"));
        }
        if (self.epsilon_count == 1 && self.epsilon_min != self.epsilon_max)
            || (self.delta_phi_count == 1 && self.delta_phi_min != self.delta_phi_max)
        {
            return Err(Error::domain(
                "a single-point axis needs coinciding endpoints",
            ));
        }
        Ok(())
    }

    pub fn epsilon_axis(&self) -> Vec<f64> {
        linear_axis(self.epsilon_min, self.epsilon_max, self.epsilon_count)
    }

    pub fn delta_phi_axis(&self) -> Vec<f64> {
        let (lo, hi) = (self.delta_phi_min.ln(), self.delta_phi_max.ln());
        let mut axis: Vec<f64> = linear_axis(lo, hi, self.delta_phi_count)
            .into_iter()
            .map(f64::exp)
            .collect();
        // exp(ln x) can be off by an ulp; the endpoints are contractual.
        axis[0] = self.delta_phi_min;
        *axis.last_mut().unwrap() = self.delta_phi_max;
        axis
    }
}

fn linear_axis(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| if i == count - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// Result of sweeping the estimator over a grid. Cells are row-major with
/// `epsilon` as the slow (row) index; a `None` cell records a non-physical
/// combination rather than a number.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub epsilon_axis: Vec<f64>,
    pub delta_phi_axis: Vec<f64>,
    pub cells: Vec<Option<f64>>,
}

impl SweepTable {
    pub fn value(&self, epsilon_index: usize, delta_phi_index: usize) -> Option<f64> {
        self.cells[epsilon_index * self.delta_phi_axis.len() + delta_phi_index]
    }

    /// Smallest and largest estimate over the unmasked cells.
    pub fn min_max(&self) -> Option<(f64, f64)> {
        let mut bounds: Option<(f64, f64)> = None;
        for &cell in self.cells.iter() {
            if let Some(v) = cell {
                bounds = Some(match bounds {
                    None => (v, v),
                    Some((lo, hi)) => (lo.min(v), hi.max(v)),
                });
            }
        }
        bounds
    }

    pub fn masked_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }
}

/// Evaluate [`estimate_a`] over the whole grid, in parallel across rows.
///
/// Cells where the estimator reports a non-physical regime are masked, not
/// errors; any other failure aborts the sweep. Row order is deterministic
/// and identical to a serial evaluation (each cell is a pure function of
/// its coordinates).
pub fn sweep(
    geometry: &CylinderGeometry,
    beam: &BeamSpec,
    delta_v: f64,
    grid: &GridSpec,
) -> Result<SweepTable> {
    grid.validate()?;
    let epsilon_axis = grid.epsilon_axis();
    let delta_phi_axis = grid.delta_phi_axis();
    let rows: Vec<Result<Vec<Option<f64>>>> = epsilon_axis
        .par_iter()
        .map(|&eps| {
            let epsilon = Epsilon::new(eps)?;
            delta_phi_axis
                .iter()
                .map(|&dphi| {
                    let plan = DrivePlan::new(delta_v, dphi, epsilon)?;
                    match estimate_a(geometry, beam, &plan) {
                        Ok(a) => Ok(Some(a)),
                        Err(Error::NonPhysical(_)) => Ok(None),
                        Err(e) => Err(e),
                    }
                })
                .collect()
        })
        .collect();
    let mut cells = Vec::with_capacity(epsilon_axis.len() * delta_phi_axis.len());
    for row in rows {
        cells.extend(row?);
    }
    Ok(SweepTable {
        epsilon_axis,
        delta_phi_axis,
        cells,
    })
}

/// CSV header for serialized sweeps; pinned schema. Masked cells emit an
/// empty `a_m` field and status `nonphysical`.
pub const SWEEP_CSV_HEADER: &str = "epsilon,delta_phi_rad,a_m,status";

impl SweepTable {
    /// Serialize with a caller-supplied float formatter, rows in
    /// epsilon-major order.
    pub fn to_csv(&self, mut fmt: impl FnMut(f64) -> String) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for (i, &eps) in self.epsilon_axis.iter().enumerate() {
            for (j, &dphi) in self.delta_phi_axis.iter().enumerate() {
                out.push_str(&fmt(eps));
                out.push(',');
                out.push_str(&fmt(dphi));
                out.push(',');
                match self.value(i, j) {
                    Some(a) => {
                        out.push_str(&fmt(a));
                        out.push_str(",ok\n");
                    }
                    None => out.push_str(",nonphysical\n"),
                }
            }
        }
        out
    }
}

#[cfg(test)]
// Frozen reference values keep every digit their oracle printed.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rel(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs().max(1e-300)
    }

    fn plan(delta_phi: f64, one_minus: f64) -> DrivePlan {
        DrivePlan::new(4e5, delta_phi, Epsilon::from_one_minus(one_minus).unwrap()).unwrap()
    }

    #[test]
    fn hydrogen_ion_estimate_matches_frozen_value() {
        let exp = preset("H+").unwrap();
        let a = estimate_a(&exp.geometry, &exp.beam, &plan(1e-2, 1e-8)).unwrap();
        assert!(rel(a, 6.916_360_895_315_421_1e-4) < 1e-12, "{a:e}");
    }

    #[test]
    fn caesium_ion_estimate_matches_frozen_value() {
        let exp = preset("Cs+").unwrap();
        let a = estimate_a(&exp.geometry, &exp.beam, &plan(1e-2, 1e-8)).unwrap();
        assert!(rel(a, 6.639_761_476_088_058e-4) < 1e-12, "{a:e}");
    }

    #[test]
    fn asymptotic_phase_inverts_the_estimate_exactly() {
        // estimate_a solves the asymptotic model in closed form, so pushing
        // its output back through that model must return the input phase.
        for name in ["H+", "Cs+"] {
            let exp = preset(name).unwrap();
            let p = plan(1e-2, 1e-8);
            let a = estimate_a(&exp.geometry, &exp.beam, &p).unwrap();
            let back = phase_difference_asymptotic(&exp.geometry, &exp.beam, a, &p).unwrap();
            assert!(rel(back, 1e-2) < 1e-12, "{name}: {back:e}");
        }
    }

    #[test]
    fn exact_phase_matches_frozen_reference() {
        let exp = preset("H+").unwrap();
        let p = plan(1e-2, 1e-8);
        let exact = phase_difference(&exp.geometry, &exp.beam, 6.9e-4, &p).unwrap();
        assert!(rel(exact, 9.349_476_192_166_665_1e-3) < 1e-12, "{exact:e}");
        let asym = phase_difference_asymptotic(&exp.geometry, &exp.beam, 6.9e-4, &p).unwrap();
        assert!(rel(asym, 9.350_129_368_448_811_9e-3) < 1e-12, "{asym:e}");
    }

    #[test]
    fn single_arm_model_error_decays_with_arm_separation() {
        // Both neglected pieces shrink as a drops: the near arm like
        // e^{-s/a} and the asymptote correction like a/(8 r). At a = 4e-4
        // the latter dominates at ~1.5e-5 relative.
        let exp = preset("H+").unwrap();
        let p = plan(1e-2, 1e-8);
        let mut last_gap = f64::INFINITY;
        for a in [1.6e-3, 8e-4, 4e-4] {
            let exact = phase_difference(&exp.geometry, &exp.beam, a, &p).unwrap();
            let asym = phase_difference_asymptotic(&exp.geometry, &exp.beam, a, &p).unwrap();
            let gap = rel(exact, asym);
            assert!(gap < last_gap, "gap {gap:e} did not shrink at a = {a:e}");
            last_gap = gap;
        }
        assert!(last_gap < 1e-4);
    }

    #[test]
    fn phase_is_zero_for_coincident_arms_and_perfect_shielding() {
        let exp = preset("H+").unwrap();
        let merged = CylinderGeometry::new(0.27, 0.244, 0.0).unwrap();
        let p = plan(1e-2, 1e-8);
        assert_eq!(
            phase_difference(&merged, &exp.beam, 6.9e-4, &p).unwrap(),
            0.0
        );
        let perfect = DrivePlan::new(4e5, 1e-2, Epsilon::new(1.0).unwrap()).unwrap();
        assert_eq!(
            phase_difference(&exp.geometry, &exp.beam, 6.9e-4, &perfect).unwrap(),
            0.0
        );
        // ... but a perfectly shielded cylinder cannot be inverted.
        assert!(estimate_a(&exp.geometry, &exp.beam, &perfect).is_err());
    }

    #[test]
    fn deep_shielding_phase_stays_finite() {
        let exp = preset("H+").unwrap();
        let p = plan(1e-2, 1e-8);
        // R/a = 1e4: unscaled I0 would overflow at e^{10000}.
        let phi = phase_difference(&exp.geometry, &exp.beam, 2.7e-5, &p).unwrap();
        assert!(phi.is_finite() && phi >= 0.0);
    }

    #[test]
    fn estimate_grows_with_phase_and_with_shielding() {
        let exp = preset("H+").unwrap();
        let a1 = estimate_a(&exp.geometry, &exp.beam, &plan(1e-4, 1e-3)).unwrap();
        let a2 = estimate_a(&exp.geometry, &exp.beam, &plan(1e-3, 1e-3)).unwrap();
        let a3 = estimate_a(&exp.geometry, &exp.beam, &plan(1e-2, 1e-3)).unwrap();
        assert!(a1 < a2 && a2 < a3, "{a1:e} {a2:e} {a3:e}");
        // Larger eps (smaller complement) means better shielding was needed
        // to still see the same phase: the inferred a must grow.
        let b1 = estimate_a(&exp.geometry, &exp.beam, &plan(1e-3, 1e-2)).unwrap();
        let b2 = estimate_a(&exp.geometry, &exp.beam, &plan(1e-3, 1e-5)).unwrap();
        let b3 = estimate_a(&exp.geometry, &exp.beam, &plan(1e-3, 1e-8)).unwrap();
        assert!(b1 < b2 && b2 < b3, "{b1:e} {b2:e} {b3:e}");
    }

    #[test]
    fn non_physical_regime_is_typed() {
        // The denominator changes sign at 1 - eps = 4.9283488892893e-21 for
        // the hydrogen-ion preset at delta_phi = 1e-2.
        let exp = preset("H+").unwrap();
        let flip = 4.928_348_889_289_3e-21;
        assert!(estimate_a(&exp.geometry, &exp.beam, &plan(1e-2, flip * 1.1)).is_ok());
        assert!(matches!(
            estimate_a(&exp.geometry, &exp.beam, &plan(1e-2, flip * 0.9)),
            Err(Error::NonPhysical(_))
        ));
    }

    #[test]
    fn photon_mass_frozen_values() {
        let low = photon_mass(3.3e-4).unwrap();
        assert!(rel(low.mass_kg, 1.065_961_496_845_685_4e-39) < 1e-12);
        assert!(rel(low.mass_ev, 5.979_605_464_799_892_1e-4) < 1e-12);
        let high = photon_mass(6.9e-4).unwrap();
        assert!(rel(high.mass_kg, 5.098_076_724_044_582_3e-40) < 1e-12);
        assert!(rel(high.mass_ev, 2.859_811_309_252_122_3e-4) < 1e-12);
    }

    #[test]
    fn photon_mass_times_a_is_constant() {
        let want = HBAR / constants::SPEED_OF_LIGHT;
        for exponent in -10..=2 {
            let a = 10f64.powi(exponent);
            let scale = photon_mass(a).unwrap();
            assert!(rel(scale.mass_kg * a, want) < 1e-14);
        }
    }

    #[test]
    fn default_sweep_bounds_match_frozen_corners() {
        // The estimate is monotone in both axes, so the extremes sit at
        // opposite grid corners regardless of the cell counts.
        let exp = preset("H+").unwrap();
        let grid = GridSpec {
            epsilon_count: 7,
            delta_phi_count: 5,
            ..GridSpec::default()
        };
        let table = sweep(&exp.geometry, &exp.beam, exp.delta_v, &grid).unwrap();
        assert_eq!(table.masked_count(), 0);
        let (lo, hi) = table.min_max().unwrap();
        assert!(rel(lo, 3.815_942_855e-4) < 1e-9, "{lo:e}");
        assert!(rel(hi, 4.918_255_624e-4) < 1e-9, "{hi:e}");

        let cs = preset("Cs+").unwrap();
        let table = sweep(&cs.geometry, &cs.beam, cs.delta_v, &grid).unwrap();
        let (lo, hi) = table.min_max().unwrap();
        assert!(rel(lo, 3.798_614_780e-4) < 1e-9, "{lo:e}");
        assert!(rel(hi, 4.832_475_312e-4) < 1e-9, "{hi:e}");
    }

    #[test]
    fn sweep_matches_serial_evaluation_bit_for_bit() {
        let exp = preset("Cs+").unwrap();
        let grid = GridSpec {
            epsilon_count: 13,
            delta_phi_count: 11,
            ..GridSpec::default()
        };
        let table = sweep(&exp.geometry, &exp.beam, exp.delta_v, &grid).unwrap();
        for (i, &eps) in table.epsilon_axis.iter().enumerate() {
            for (j, &dphi) in table.delta_phi_axis.iter().enumerate() {
                let plan =
                    DrivePlan::new(exp.delta_v, dphi, Epsilon::new(eps).unwrap()).unwrap();
                let serial = estimate_a(&exp.geometry, &exp.beam, &plan).unwrap();
                assert_eq!(table.value(i, j), Some(serial));
            }
        }
    }

    #[test]
    fn sweep_masks_only_the_non_physical_cells() {
        // A tiny drive with large measured phases pushes part of the grid
        // past the sign flip; those cells are masked, the rest are values.
        let exp = preset("H+").unwrap();
        let grid = GridSpec {
            epsilon_min: 0.001,
            epsilon_max: 0.999,
            epsilon_count: 9,
            delta_phi_min: 1e-3,
            delta_phi_max: 1e3,
            delta_phi_count: 9,
        };
        let table = sweep(&exp.geometry, &exp.beam, 1e-9, &grid).unwrap();
        let masked = table.masked_count();
        assert!(masked > 0 && masked < table.cells.len(), "masked {masked}");
        let csv = table.to_csv(|v| format!("{v:e}"));
        assert!(csv.starts_with("epsilon,delta_phi_rad,a_m,status\n"));
        assert!(csv.contains(",nonphysical\n"));
        assert!(csv.contains(",ok\n"));
        assert_eq!(csv.lines().count(), 1 + 81);
    }

    #[test]
    fn axes_hit_their_endpoints_exactly() {
        let grid = GridSpec::default();
        let eps = grid.epsilon_axis();
        assert_eq!(eps.len(), 100);
        assert_eq!(eps[0], 0.001);
        assert_eq!(eps[99], 0.999);
        let phi = grid.delta_phi_axis();
        assert_eq!(phi[0], 1e-4);
        assert_eq!(phi[99], 1e-2);
    }

    #[test]
    fn grid_validation_rejects_nonsense() {
        let bad = GridSpec { epsilon_max: 1.0, ..GridSpec::default() };
        assert!(sweep_err(&bad));
        let bad = GridSpec { delta_phi_min: 0.0, ..GridSpec::default() };
        assert!(sweep_err(&bad));
        let bad = GridSpec { epsilon_count: 0, ..GridSpec::default() };
        assert!(sweep_err(&bad));
    }

    fn sweep_err(grid: &GridSpec) -> bool {
        let exp = preset("H+").unwrap();
        sweep(&exp.geometry, &exp.beam, exp.delta_v, grid).is_err()
    }

    #[test]
    fn preset_lookup() {
        assert!(preset("H+").is_ok());
        assert!(preset("Cs+").is_ok());
        assert!(preset("He+").is_err());
        let exp = preset("Cs+").unwrap();
        assert_eq!(exp.beam.label(), "Cs+");
        assert_eq!(exp.beam.speed(), 27.0);
        assert!((exp.beam.time_of_flight() - 1.0 / 27.0).abs() < 1e-18);
    }
}
