//! Physical constants, CODATA 2018 adjustment.
//!
//! Everything downstream reads constants from [`PhysicalConstants`] so a
//! single table controls provenance. SI defining constants (c, e, h) are
//! exact by the 2019 redefinition.

/// Reduced Planck constant ħ (J·s). Exact.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light c (m/s). Exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Elementary charge e (C). Exact.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// ħc (MeV·fm).
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;

/// Electron mass energy equivalent m_e·c² (MeV).
pub const ELECTRON_MASS_MEV: f64 = 0.510_998_950_00;

/// Fine-structure constant α (dimensionless).
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;

/// Bohr radius (m).
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;

/// One electron-volt (J). Exact.
pub const ELECTRON_VOLT_J: f64 = 1.602_176_634e-19;

/// Version tag stamped into report provenance blocks.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// The constants table as a value, for code that wants to thread it around
/// explicitly (reports, tests that must pin provenance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħ (J·s)
    pub hbar: f64,
    /// c (m/s)
    pub c: f64,
    /// e (C)
    pub e_charge: f64,
    /// ħc (MeV·fm)
    pub hbar_c: f64,
    /// m_e·c² (MeV)
    pub m_electron: f64,
    /// α
    pub alpha: f64,
    /// a₀ (m)
    pub bohr_radius: f64,
    /// 1 eV (J)
    pub electron_volt: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: SPEED_OF_LIGHT,
        e_charge: ELEMENTARY_CHARGE,
        hbar_c: HBAR_C_MEV_FM,
        m_electron: ELECTRON_MASS_MEV,
        alpha: FINE_STRUCTURE,
        bohr_radius: BOHR_RADIUS_M,
        electron_volt: ELECTRON_VOLT_J,
    };

    /// Bohr radius rebuilt from ħc/(m_e·α), in metres. Agrees with the
    /// tabulated `bohr_radius` to ~3e-10 relative; a unit test holds the two
    /// within 1e-6 so a typo in either entry cannot slip through.
    pub fn bohr_radius_derived(&self) -> f64 {
        self.hbar_c / (self.m_electron * self.alpha) * 1e-15
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bohr_radius_consistent_with_hbar_c() {
        let k = PhysicalConstants::CODATA_2018;
        let derived = k.bohr_radius_derived();
        let rel = (derived - k.bohr_radius).abs() / k.bohr_radius;
        assert!(rel < 1e-6, "tabulated vs derived Bohr radius: rel {rel:e}");
    }

    #[test]
    fn defining_constants_are_exact_2019_si_values() {
        assert_eq!(SPEED_OF_LIGHT, 299_792_458.0);
        assert_eq!(ELEMENTARY_CHARGE, 1.602_176_634e-19);
        assert_eq!(ELEMENTARY_CHARGE, ELECTRON_VOLT_J);
    }

    #[test]
    fn sane_ranges() {
        let k = PhysicalConstants::CODATA_2018;
        assert!(k.alpha > 7.29e-3 && k.alpha < 7.30e-3);
        assert!(k.hbar_c > 197.0 && k.hbar_c < 198.0);
        assert!(k.m_electron > 0.510 && k.m_electron < 0.512);
    }
}
