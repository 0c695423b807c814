//! Length quantities with explicit units, and the length ↔ inverse-energy
//! bridge used by the natural-units hydrogen sector.
//!
//! Conversions multiply or divide by an exact power of ten (10^k is exactly
//! representable for k ≤ 22), so a round trip costs at most 1 ulp.

use std::fmt;
use std::str::FromStr;

use crate::constants::HBAR_C_MEV_FM;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthUnit {
    Metre,
    Centimetre,
    Millimetre,
    Femtometre,
}

impl LengthUnit {
    /// Decimal exponent of the unit relative to the metre.
    fn exponent(self) -> i32 {
        match self {
            LengthUnit::Metre => 0,
            LengthUnit::Centimetre => -2,
            LengthUnit::Millimetre => -3,
            LengthUnit::Femtometre => -15,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            LengthUnit::Metre => "m",
            LengthUnit::Centimetre => "cm",
            LengthUnit::Millimetre => "mm",
            LengthUnit::Femtometre => "fm",
        }
    }
}

/// A length tagged with its unit. Values must be finite; most call sites
/// additionally require positivity and enforce it at their own boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Length {
    pub value: f64,
    pub unit: LengthUnit,
}

impl Length {
    pub fn new(value: f64, unit: LengthUnit) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain(format!("length value must be finite, got {value}")));
        }
        Ok(Length { value, unit })
    }

    /// Re-expresses the length in `unit`, multiplying (scaling up) or
    /// dividing (scaling down) by one exact power of ten.
    pub fn to_unit(self, unit: LengthUnit) -> Length {
        let shift = self.unit.exponent() - unit.exponent();
        let value = if shift == 0 {
            self.value
        } else if shift > 0 {
            self.value * 10f64.powi(shift)
        } else {
            self.value / 10f64.powi(-shift)
        };
        Length { value, unit }
    }

    pub fn metres(self) -> f64 {
        self.to_unit(LengthUnit::Metre).value
    }

    pub fn femtometres(self) -> f64 {
        self.to_unit(LengthUnit::Femtometre).value
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit.symbol())
    }
}

/// Parses `"0.033cm"`, `"5.56 fm"`, `"1e-3m"`. A bare number is metres.
impl FromStr for Length {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, unit) = if let Some(rest) = s.strip_suffix("fm") {
            (rest, LengthUnit::Femtometre)
        } else if let Some(rest) = s.strip_suffix("cm") {
            (rest, LengthUnit::Centimetre)
        } else if let Some(rest) = s.strip_suffix("mm") {
            (rest, LengthUnit::Millimetre)
        } else if let Some(rest) = s.strip_suffix('m') {
            (rest, LengthUnit::Metre)
        } else {
            (s, LengthUnit::Metre)
        };
        let value: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("cannot parse length {s:?}")))?;
        Length::new(value, unit)
    }
}

/// Converts a length to natural units: MeV⁻¹, via a/ħc.
///
/// 1 fm ≈ 5.0677e-3 MeV⁻¹.
pub fn length_to_inverse_energy(length: Length) -> Result<f64> {
    let fm = length.femtometres();
    if fm <= 0.0 {
        return Err(Error::domain(format!("length must be positive, got {fm} fm")));
    }
    Ok(fm / HBAR_C_MEV_FM)
}

/// Inverse of [`length_to_inverse_energy`]: MeV⁻¹ back to a femtometre length.
pub fn inverse_energy_to_length(inv_mev: f64) -> Result<Length> {
    if inv_mev <= 0.0 || !inv_mev.is_finite() {
        return Err(Error::domain(format!(
            "inverse energy must be positive and finite, got {inv_mev}"
        )));
    }
    Length::new(inv_mev * HBAR_C_MEV_FM, LengthUnit::Femtometre)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_fm_in_inverse_mev() {
        // 1/197.3269804, mpmath: 5.06773071767939545e-3
        let v = length_to_inverse_energy(Length::new(1.0, LengthUnit::Femtometre).unwrap()).unwrap();
        assert!((v - 5.067_730_717_679_395e-3).abs() < 1e-17);
    }

    #[test]
    fn five_point_five_six_fm() {
        // mpmath: 0.0281765827902974387 MeV^-1, reciprocal 35.4904641 MeV
        let v = length_to_inverse_energy("5.56fm".parse::<Length>().unwrap()).unwrap();
        assert!((v - 2.817_658_279_029_744e-2).abs() / v < 1e-12);
        assert!((1.0 / v - 35.490_464_100_719_42).abs() < 1e-9);
    }

    #[test]
    fn conversion_round_trip_within_one_ulp() {
        for &v in &[0.27, 6.9e-4, 5.56, 1.0, 123.456e-7] {
            let m = Length::new(v, LengthUnit::Metre).unwrap();
            let back = m.to_unit(LengthUnit::Femtometre).to_unit(LengthUnit::Metre);
            let ulp = (v.to_bits() as i64 - back.value.to_bits() as i64).abs();
            assert!(ulp <= 1, "{v}: round trip off by {ulp} ulp");
        }
    }

    #[test]
    fn parses_suffixed_lengths() {
        let l: Length = "0.033cm".parse().unwrap();
        assert_eq!(l.unit, LengthUnit::Centimetre);
        assert!((l.metres() - 3.3e-4).abs() < 1e-19);
        assert_eq!("6.4 mm".parse::<Length>().unwrap().metres(), 6.4e-3);
        assert_eq!("0.27".parse::<Length>().unwrap().metres(), 0.27);
        assert!("abc m".parse::<Length>().is_err());
        assert!("inf m".parse::<Length>().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let l = Length::new(5.56, LengthUnit::Femtometre).unwrap();
        let inv = length_to_inverse_energy(l).unwrap();
        let back = inverse_energy_to_length(inv).unwrap();
        assert!((back.femtometres() - 5.56).abs() / 5.56 < 1e-15);
    }
}
