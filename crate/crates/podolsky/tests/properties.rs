//! Randomized invariants. Each property states something that must hold for
//! *every* admissible input, not just the frozen reference points, so these
//! complement the pinned-value tests rather than duplicate them.

use proptest::prelude::*;

use podolsky::bessel;
use podolsky::constants::{HBAR, SPEED_OF_LIGHT};
use podolsky::fields::{CylinderGeometry, CylinderSolution, Epsilon};
use podolsky::interferometry::{self, preset, DrivePlan, GridSpec};
use podolsky::units::{Length, LengthUnit};

const UNITS: [LengthUnit; 4] = [
    LengthUnit::Metre,
    LengthUnit::Centimetre,
    LengthUnit::Millimetre,
    LengthUnit::Femtometre,
];

proptest! {
    /// x (I0 K1 + I1 K0) = 1 wherever the scaled evaluators are defined.
    #[test]
    fn wronskian_holds_everywhere(exp in -3.0f64..3.0) {
        let x = 10f64.powf(exp);
        let w = x
            * (bessel::i0e(x).unwrap() * bessel::k1e(x).unwrap()
                + bessel::i1e(x).unwrap() * bessel::k0e(x).unwrap());
        prop_assert!((w - 1.0).abs() <= 1e-10, "defect {:e} at x = {x:e}", (w - 1.0).abs());
    }

    /// Unit conversion is a pure power-of-ten rescale: converting there and
    /// back moves the value by at most a couple of ulps, and parsing the
    /// display form is lossless.
    #[test]
    fn length_conversions_roundtrip(
        value in 1e-12f64..1e12,
        from in 0usize..4,
        to in 0usize..4,
    ) {
        let original = Length::new(value, UNITS[from]).unwrap();
        let back = original.to_unit(UNITS[to]).to_unit(UNITS[from]);
        let drift = (back.value - value).abs() / value;
        prop_assert!(drift <= 4.0 * f64::EPSILON, "drift {drift:e}");

        let reparsed: Length = original.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, original);
    }

    /// The interior profile depends on lengths only through their ratios:
    /// rescaling a, r, and the whole geometry by a common factor leaves
    /// phi(r)/V unchanged.
    #[test]
    fn cylinder_profile_is_scale_invariant(
        a_exp in -4.0f64..-0.5,
        r_frac in 0.01f64..0.999,
        eps in 0.01f64..0.99,
        lambda_exp in -3.0f64..3.0,
    ) {
        let big_r = 0.27;
        let a = 10f64.powf(a_exp);
        let lambda = 10f64.powf(lambda_exp);

        let base_geo = CylinderGeometry::new(big_r, 0.9 * big_r, 0.05 * big_r).unwrap();
        let base = CylinderSolution::new(a, 4.0e5, Epsilon::new(eps).unwrap()).unwrap();
        let scaled_geo =
            CylinderGeometry::new(lambda * big_r, 0.9 * lambda * big_r, 0.05 * lambda * big_r)
                .unwrap();
        let scaled =
            CylinderSolution::new(lambda * a, 4.0e5, Epsilon::new(eps).unwrap()).unwrap();

        let phi = base.potential(&base_geo, r_frac * big_r).unwrap();
        let phi_scaled = scaled.potential(&scaled_geo, r_frac * lambda * big_r).unwrap();
        let gap = (phi - phi_scaled).abs() / phi.abs().max(f64::MIN_POSITIVE);
        prop_assert!(gap <= 1e-12, "gap {gap:e} at r/R = {r_frac}, R/a = {:e}", big_r / a);
    }

    /// Over the published grid window the estimate is strictly monotone:
    /// more measured phase means a larger scale, and so does a higher
    /// interior plateau (better shielding observed).
    #[test]
    fn estimate_is_monotone_in_phase_and_plateau(
        eps_lo in 0.001f64..0.99,
        eps_step in 0.001f64..0.009,
        phi_lo in 1e-4f64..9e-3,
        phi_step in 1e-5f64..1e-3,
    ) {
        let exp = preset("H+").unwrap();
        let at = |eps: f64, dphi: f64| {
            let plan = DrivePlan::new(exp.delta_v, dphi, Epsilon::new(eps).unwrap()).unwrap();
            interferometry::estimate_a(&exp.geometry, &exp.beam, &plan).unwrap()
        };
        let base = at(eps_lo, phi_lo);
        prop_assert!(at(eps_lo, phi_lo + phi_step) > base);
        prop_assert!(at(eps_lo + eps_step, phi_lo) > base);
    }

    /// mass_kg * a is the fixed constant hbar / c across twelve decades,
    /// and the eV field is the exact mass-energy conversion of the kg field.
    #[test]
    fn photon_mass_inverse_scaling(a_exp in -10.0f64..2.0) {
        let a = 10f64.powf(a_exp);
        let scale = interferometry::photon_mass(a).unwrap();
        let product = scale.mass_kg * a;
        let expected = HBAR / SPEED_OF_LIGHT;
        prop_assert!((product / expected - 1.0).abs() <= 1e-12);

        let ev = scale.mass_kg * SPEED_OF_LIGHT * SPEED_OF_LIGHT
            / podolsky::constants::ELECTRON_VOLT_J;
        prop_assert!((scale.mass_ev / ev - 1.0).abs() <= 1e-15);
    }

    /// The parallel sweep is pure bookkeeping: every cell equals a direct
    /// single-point evaluation at its axis coordinates, bit for bit.
    #[test]
    fn sweep_cells_match_direct_evaluation(
        n_eps in 2usize..7,
        n_phi in 2usize..7,
        eps_lo in 0.001f64..0.4,
        phi_lo in 1e-4f64..1e-3,
    ) {
        let exp = preset("Cs+").unwrap();
        let grid = GridSpec {
            epsilon_min: eps_lo,
            epsilon_max: eps_lo + 0.5,
            epsilon_count: n_eps,
            delta_phi_min: phi_lo,
            delta_phi_max: phi_lo * 5.0,
            delta_phi_count: n_phi,
        };
        let table = interferometry::sweep(&exp.geometry, &exp.beam, exp.delta_v, &grid).unwrap();
        for (i, &eps) in table.epsilon_axis.iter().enumerate() {
            for (j, &dphi) in table.delta_phi_axis.iter().enumerate() {
                let plan =
                    DrivePlan::new(exp.delta_v, dphi, Epsilon::new(eps).unwrap()).unwrap();
                let direct = interferometry::estimate_a(&exp.geometry, &exp.beam, &plan).unwrap();
                let cell = table.value(i, j).expect("window is fully physical");
                prop_assert_eq!(cell.to_bits(), direct.to_bits());
            }
        }
    }

    /// Far outside the screening length the point-charge profile is Coulomb
    /// (convention here: the coefficient is -(1 - e^{-r/a}) / r).
    #[test]
    fn point_charge_reaches_coulomb(a_exp in -6.0f64..-2.0, r_mult in 40.0f64..200.0) {
        let a = 10f64.powf(a_exp);
        let r = r_mult * a;
        let phi = podolsky::fields::point_charge_potential(a, r).unwrap();
        let coulomb = -1.0 / r;
        prop_assert!(((phi - coulomb) / coulomb).abs() <= 1e-15);
    }
}
