//! Electrostatic potentials and fields in the higher-derivative theory.
//!
//! The theory carries one new parameter, a length `a`. Inside a charged
//! cylinder the potential is no longer flat: it sags toward the axis with a
//! modified-Bessel profile whose decay length is `a`. Around a point charge
//! the Coulomb divergence is regularized on the same scale. Both effects
//! vanish smoothly as `a -> 0`.

use crate::bessel;
use crate::error::{Error, Result};

/// Shielding-quality parameter of the outer cylinder.
///
/// The interior plateau sits at `epsilon * V`; the complement `1 - epsilon`
/// sets the amplitude of the Bessel-shaped sag toward the axis, which is
/// the quantity the interferometer actually measures. Stored as
/// `1 - epsilon` because experiments constrain the complement down to 1e-8
/// and beyond, far below what `epsilon` itself can resolve in f64. All
/// arithmetic that matters uses the complement directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epsilon {
    one_minus: f64,
}

impl Epsilon {
    /// From the shielding fraction itself. Loses precision once
    /// `1 - epsilon < 1e-16`; prefer [`Epsilon::from_one_minus`] there.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::domain(format!("epsilon {epsilon:e} outside [0, 1]")));
        }
        Ok(Self {
            one_minus: 1.0 - epsilon,
        })
    }

    /// From the leakage complement `1 - epsilon`, which may be arbitrarily
    /// small without loss.
    pub fn from_one_minus(one_minus: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&one_minus) {
            return Err(Error::domain(format!(
                "1 - epsilon = {one_minus:e} outside [0, 1]"
            )));
        }
        Ok(Self { one_minus })
    }

    pub fn value(&self) -> f64 {
        1.0 - self.one_minus
    }

    pub fn one_minus(&self) -> f64 {
        self.one_minus
    }

    /// ln(1 - epsilon), finite for any representable nonzero complement.
    pub fn ln_one_minus(&self) -> f64 {
        self.one_minus.ln()
    }
}

impl std::fmt::Display for Epsilon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1 - {:e}", self.one_minus)
    }
}

/// Nested-cylinder geometry: a grounded outer shell of radius `outer_radius`
/// encloses the interferometer arms at radii `beam_radius` and
/// `beam_radius + arm_separation`, all in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderGeometry {
    outer_radius: f64,
    beam_radius: f64,
    arm_separation: f64,
}

impl CylinderGeometry {
    /// `arm_separation` may be zero (degenerate coincident arms); both radii
    /// must sit strictly inside the outer shell.
    pub fn new(outer_radius: f64, beam_radius: f64, arm_separation: f64) -> Result<Self> {
        let ok = outer_radius.is_finite()
            && beam_radius.is_finite()
            && arm_separation.is_finite()
            && beam_radius > 0.0
            && arm_separation >= 0.0
            && beam_radius + arm_separation < outer_radius;
        if !ok {
            return Err(Error::domain(format!(
                "need 0 < beam_radius and beam_radius + arm_separation < outer_radius, \
                 got R = {outer_radius:e}, r0 = {beam_radius:e}, s = {arm_separation:e}"
            )));
        }
        Ok(Self {
            outer_radius,
            beam_radius,
            arm_separation,
        })
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub fn beam_radius(&self) -> f64 {
        self.beam_radius
    }

    pub fn arm_separation(&self) -> f64 {
        self.arm_separation
    }

    /// Radius of the far arm, `beam_radius + arm_separation`.
    pub fn far_arm_radius(&self) -> f64 {
        self.beam_radius + self.arm_separation
    }
}

/// Interior potential of a driven cylinder at one value of the length `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderSolution {
    a: f64,
    v_total: f64,
    epsilon: Epsilon,
}

impl CylinderSolution {
    /// `a` is the theory's length scale in metres, `v_total` the full drive
    /// potential on the shell (offsets included), `epsilon` the shielding.
    pub fn new(a: f64, v_total: f64, epsilon: Epsilon) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("length scale a = {a:e} must be positive")));
        }
        if !v_total.is_finite() {
            return Err(Error::domain(format!("drive potential {v_total:e} must be finite")));
        }
        Ok(Self {
            a,
            v_total,
            epsilon,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn v_total(&self) -> f64 {
        self.v_total
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    /// Potential at radius r, volts:
    /// `V [ (1 - eps) I0(r/a) / I0(R/a) + eps ]`.
    ///
    /// Evaluated through exponentially scaled Bessel ratios, so it stays
    /// finite for arbitrarily large `R/a` (deep shielding). At r = R the
    /// ratio is exactly 1 and the result is `v_total` up to rounding; on the
    /// axis, in the deep-shielding regime, it is `eps * v_total`.
    pub fn potential(&self, geometry: &CylinderGeometry, r: f64) -> Result<f64> {
        let x_big = self.check_radius(geometry, r)?;
        let x = r / self.a;
        let ratio = bessel::i0e(x)? / bessel::i0e(x_big)? * (x - x_big).exp();
        Ok(self.v_total * (self.epsilon.one_minus() * ratio + self.epsilon.value()))
    }

    /// Radial field component at radius r, volts per metre:
    /// `-V (1 - eps) I1(r/a) / (a I0(R/a))`.
    ///
    /// Zero on the axis exactly (I1(0) = 0); strictly inward-pointing for a
    /// positive drive everywhere else.
    pub fn field(&self, geometry: &CylinderGeometry, r: f64) -> Result<f64> {
        let x_big = self.check_radius(geometry, r)?;
        let x = r / self.a;
        let ratio = bessel::i1e(x)? / bessel::i0e(x_big)? * (x - x_big).exp();
        Ok(-self.v_total * self.epsilon.one_minus() * ratio / self.a)
    }

    /// The same interior solution written against the general radial basis.
    /// Only available while `I0(R/a)` is representable; deep shielding makes
    /// the I0 coefficient underflow and the K0/log coefficients are zero by
    /// regularity, so the reduced form is an overflow error there.
    pub fn general_coefficients(&self, geometry: &CylinderGeometry) -> Result<GeneralSolution> {
        let x_big = geometry.outer_radius / self.a;
        let i0_big = bessel::i0(x_big)?;
        GeneralSolution::new(
            self.a,
            self.v_total * self.epsilon.one_minus() / (self.a * self.a * i0_big),
            0.0,
            self.v_total * self.epsilon.value(),
            0.0,
        )
    }

    fn check_radius(&self, geometry: &CylinderGeometry, r: f64) -> Result<f64> {
        if !(r.is_finite() && r >= 0.0 && r <= geometry.outer_radius) {
            return Err(Error::domain(format!(
                "radius {r:e} outside [0, {:e}]",
                geometry.outer_radius
            )));
        }
        Ok(geometry.outer_radius / self.a)
    }
}

/// General axisymmetric solution of the fourth-order radial equation:
/// `phi(r) = a^2 A I0(r/a) + a^2 B K0(r/a) + D ln(r/a) + C`.
///
/// The fields store (A, B, C, D) as `coeff_i0`, `coeff_k0`, `coeff_const`,
/// `coeff_log`. When `coeff_log == a^2 * coeff_k0` the logarithmic
/// singularities cancel and the value stays finite as r -> 0, approaching
/// `a^2 (A + B (ln 2 - gamma)) + C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralSolution {
    pub a: f64,
    pub coeff_i0: f64,
    pub coeff_k0: f64,
    pub coeff_const: f64,
    pub coeff_log: f64,
}

impl GeneralSolution {
    pub fn new(a: f64, coeff_i0: f64, coeff_k0: f64, coeff_const: f64, coeff_log: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("length scale a = {a:e} must be positive")));
        }
        for (name, c) in [
            ("coeff_i0", coeff_i0),
            ("coeff_k0", coeff_k0),
            ("coeff_const", coeff_const),
            ("coeff_log", coeff_log),
        ] {
            if !c.is_finite() {
                return Err(Error::domain(format!("{name} = {c:e} must be finite")));
            }
        }
        Ok(Self {
            a,
            coeff_i0,
            coeff_k0,
            coeff_const,
            coeff_log,
        })
    }

    /// Evaluate at r > 0. Unscaled I0 overflows past `r/a ~ 709`; that
    /// surfaces as a typed overflow error rather than an infinity.
    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::domain(format!(
                "general solution needs r > 0, got {r:e} (the log and K0 terms diverge at 0)"
            )));
        }
        let x = r / self.a;
        let a2 = self.a * self.a;
        let mut out = self.coeff_const + self.coeff_log * x.ln();
        if self.coeff_i0 != 0.0 {
            out += a2 * self.coeff_i0 * bessel::i0(x)?;
        }
        if self.coeff_k0 != 0.0 {
            out += a2 * self.coeff_k0 * bessel::k0(x)?;
        }
        Ok(out)
    }
}

/// Convenience wrapper matching the struct method.
pub fn general_solution_value(solution: &GeneralSolution, r: f64) -> Result<f64> {
    solution.value(r)
}

/// Potential around a unit point charge, natural units: the coefficient of
/// the charge, `-(1 - e^{-r/a}) / r`, per unit length.
///
/// Finite at the origin with limit `-1/a`: the divergence of the Coulomb
/// potential is cut off on the scale `a`. Computed through `expm1`, so the
/// small-r cancellation costs no precision.
pub fn point_charge_potential(a: f64, r: f64) -> Result<f64> {
    check_point_args(a, r)?;
    if r == 0.0 {
        return Ok(-1.0 / a);
    }
    Ok((-r / a).exp_m1() / r)
}

/// Radial derivative of [`point_charge_potential`] times -1 (the field
/// coefficient): `-(1 - e^{-r/a}(1 + r/a)) / r^2`.
///
/// Finite at the origin with limit `-1/(2a^2)`. The subtraction is done by
/// series below `r/a = 1/2`, where the closed form loses digits.
pub fn point_charge_field(a: f64, r: f64) -> Result<f64> {
    check_point_args(a, r)?;
    let x = r / a;
    if x < 0.5 {
        // 1 - e^{-x}(1+x) = sum_{k>=2} (-1)^k x^k (k-1) / k!
        let mut sum = 0.0_f64;
        let mut term = 0.5_f64; // k = 2 term divided by x^2
        let mut k = 2.0;
        let mut pow = 1.0;
        loop {
            let contrib = term * pow;
            sum += contrib;
            if contrib.abs() < f64::EPSILON * sum.abs() {
                break;
            }
            // ratio of successive terms: -(k) x / ((k+1)(k-1)) on the
            // reduced coefficients (k-1)/k!
            term *= -k / ((k + 1.0) * (k - 1.0));
            pow *= x;
            k += 1.0;
        }
        return Ok(-sum / (a * a));
    }
    Ok(-(1.0 - (-x).exp() * (1.0 + x)) / (r * r))
}

fn check_point_args(a: f64, r: f64) -> Result<()> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::domain(format!("length scale a = {a:e} must be positive")));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("radius {r:e} must be finite and >= 0")));
    }
    Ok(())
}

/// A sampled radial profile of potential and field.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialProfile {
    pub radii: Vec<f64>,
    pub potential: Vec<f64>,
    pub field: Vec<f64>,
}

impl PotentialProfile {
    /// Sample the cylinder interior on `samples >= 2` evenly spaced radii
    /// from the axis to the shell inclusive.
    pub fn sample_cylinder(
        solution: &CylinderSolution,
        geometry: &CylinderGeometry,
        samples: usize,
    ) -> Result<Self> {
        if samples < 2 {
            return Err(Error::domain(format!("need at least 2 samples, got {samples}")));
        }
        let step = geometry.outer_radius / (samples - 1) as f64;
        let mut radii = Vec::with_capacity(samples);
        let mut potential = Vec::with_capacity(samples);
        let mut field = Vec::with_capacity(samples);
        for i in 0..samples {
            let r = if i == samples - 1 {
                geometry.outer_radius // land on the shell exactly
            } else {
                step * i as f64
            };
            radii.push(r);
            potential.push(solution.potential(geometry, r)?);
            field.push(solution.field(geometry, r)?);
        }
        Ok(Self {
            radii,
            potential,
            field,
        })
    }

    /// Sample the point-charge coefficients from the origin out to `r_max`.
    pub fn sample_point_charge(a: f64, r_max: f64, samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(Error::domain(format!("need at least 2 samples, got {samples}")));
        }
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::domain(format!("r_max = {r_max:e} must be positive")));
        }
        let step = r_max / (samples - 1) as f64;
        let mut radii = Vec::with_capacity(samples);
        let mut potential = Vec::with_capacity(samples);
        let mut field = Vec::with_capacity(samples);
        for i in 0..samples {
            let r = step * i as f64;
            radii.push(r);
            potential.push(point_charge_potential(a, r)?);
            field.push(point_charge_field(a, r)?);
        }
        Ok(Self {
            radii,
            potential,
            field,
        })
    }

    /// CSV header for cylinder profiles; the column schema is part of the
    /// public contract and is pinned by tests.
    pub const CSV_HEADER: &'static str = "r_m,phi_V,E_V_per_m";

    /// Serialize with a caller-supplied float formatter (the CLI pins its
    /// own deterministic format; tests may use shortest-round-trip).
    pub fn to_csv(&self, mut fmt: impl FnMut(f64) -> String) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for i in 0..self.radii.len() {
            out.push_str(&fmt(self.radii[i]));
            out.push(',');
            out.push_str(&fmt(self.potential[i]));
            out.push(',');
            out.push_str(&fmt(self.field[i]));
            out.push('\n');
        }
        out
    }
}
