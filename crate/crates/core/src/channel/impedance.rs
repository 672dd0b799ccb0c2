use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex impedance in ohms. Serialized as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Impedance {
    #[serde(rename = "re")]
    pub resistance: f64,
    #[serde(rename = "im")]
    pub reactance: f64,
}

impl Impedance {
    pub const fn new(resistance: f64, reactance: f64) -> Self {
        Self { resistance, reactance }
    }

    pub const fn resistive(resistance: f64) -> Self {
        Self::new(resistance, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.resistance.is_finite() || !self.reactance.is_finite() {
            return Err(Error::Config(format!("non-finite impedance {self}")));
        }
        if self.resistance < 0.0 {
            return Err(Error::Config(format!("impedance {self} has negative resistance")));
        }
        Ok(())
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.resistance, self.reactance)
    }
}

impl std::fmt::Display for Impedance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:+}j ohm", self.resistance, self.reactance)
    }
}

/// Power gain `|Z_L / (Z_A + Z_L)|²` of the antenna/load voltage divider.
pub fn reflection_gain(antenna: Impedance, load: Impedance) -> Result<f64> {
    let denom = antenna.as_complex() + load.as_complex();
    if denom.norm_sqr() == 0.0 {
        return Err(Error::Singular(format!("Z_A + Z_L = 0 for {antenna} and {load}")));
    }
    Ok((load.as_complex() / denom).norm_sqr())
}

/// Effective channel variance `σ_h² = |Z_L/(Z_A+Z_L)|² σ_g²`.
pub fn channel_variance(antenna: Impedance, load: Impedance, sigma_g2: f64) -> Result<f64> {
    if !(sigma_g2 > 0.0) {
        return Err(Error::domain(format!("path-gain variance must be > 0, got {sigma_g2}")));
    }
    Ok(reflection_gain(antenna, load)? * sigma_g2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOAD: Impedance = Impedance::resistive(50.0);
    const DIPOLE: Impedance = Impedance::new(72.0, 42.0);
    const LOADED: Impedance = Impedance::new(72.0, 100.0);

    #[test]
    fn shorted_antenna_passes_everything() {
        assert_eq!(reflection_gain(Impedance::resistive(0.0), LOAD).unwrap(), 1.0);
        assert_eq!(channel_variance(Impedance::resistive(0.0), LOAD, 3.0).unwrap(), 3.0);
    }

    #[test]
    fn dipole_gains() {
        // |50|² / |122 + 42j|² = 2500 / 16648
        let g1 = reflection_gain(DIPOLE, LOAD).unwrap();
        assert!((g1 - 2500.0 / 16648.0).abs() < 1e-15);
        assert!((g1 - 0.1501682).abs() < 1e-7);
        // |50|² / |122 + 100j|² = 2500 / 24884
        let g2 = reflection_gain(LOADED, LOAD).unwrap();
        assert!((g2 - 2500.0 / 24884.0).abs() < 1e-15);
    }

    #[test]
    fn variance_ratio_between_impedances() {
        let r = channel_variance(DIPOLE, LOAD, 1.0).unwrap() / channel_variance(LOADED, LOAD, 1.0).unwrap();
        assert!((r - 24884.0 / 16648.0).abs() < 1e-12);
    }

    #[test]
    fn singular_divider() {
        let za = Impedance::new(0.0, 30.0);
        let zl = Impedance::new(0.0, -30.0);
        assert!(matches!(reflection_gain(za, zl), Err(Error::Singular(_))));
    }

    #[test]
    fn negative_resistance_is_invalid() {
        assert!(Impedance::new(-1.0, 0.0).validate().is_err());
        assert!(DIPOLE.validate().is_ok());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&DIPOLE).unwrap();
        assert_eq!(s, r#"{"re":72.0,"im":42.0}"#);
    }
}
