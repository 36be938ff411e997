use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::params::{ModelParams, Orientation};
use super::presets::MaterialPreset;
use crate::error::{Error, Result};
use crate::spin_algebra::SpinSystem;

/// Planck constant, J s (exact SI).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Boltzmann constant, J/K (exact SI).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Which energy scale `beta` is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitConvention {
    /// beta = h eQq / (4I(2I-1) kT)
    Reduced,
    /// beta = h eQq / kT
    Full,
}

impl UnitConvention {
    /// Effective quadrupole frequency in MHz.
    pub fn effective_frequency_mhz(self, eqq_zz_mhz: f64, spin: SpinSystem) -> f64 {
        match self {
            UnitConvention::Reduced => eqq_zz_mhz / spin.quadrupole_denominator(),
            UnitConvention::Full => eqq_zz_mhz,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            UnitConvention::Reduced => "reduced",
            UnitConvention::Full => "full",
        }
    }
}

impl fmt::Display for UnitConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UnitConvention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "reduced" => Ok(UnitConvention::Reduced),
            "full" => Ok(UnitConvention::Full),
            other => Err(format!("unknown unit convention `{other}` (expected full|reduced)")),
        }
    }
}

/// Laboratory conditions for a physical-to-dimensionless conversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConditions {
    /// gamma / 2 pi in MHz per tesla
    pub gamma_mhz_per_tesla: f64,
    pub field_tesla: f64,
    pub temp_kelvin: f64,
    pub orientation: Orientation,
}

fn mhz_to_kelvin(freq_mhz: f64) -> f64 {
    PLANCK * freq_mhz * 1e6 / BOLTZMANN
}

pub fn physical_to_dimensionless(
    material: &MaterialPreset,
    spin: SpinSystem,
    cond: &PhysicalConditions,
    conv: UnitConvention,
) -> Result<ModelParams> {
    let t = cond.temp_kelvin;
    if !(t > 0.0) {
        return Err(Error::NonpositiveTemperature(t));
    }
    let alpha = mhz_to_kelvin(cond.gamma_mhz_per_tesla * cond.field_tesla) / t;
    let beta = mhz_to_kelvin(conv.effective_frequency_mhz(material.eqq_zz_mhz, spin)) / t;
    ModelParams::new(alpha, beta, material.eta, cond.orientation)
}

/// Temperature (K) at which the quadrupole parameter equals `beta`.
pub fn temperature_for_beta(eqq_zz_mhz: f64, spin: SpinSystem, beta: f64, conv: UnitConvention) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::OutOfRange {
            value: beta,
            range: "(0, inf)",
        });
    }
    Ok(mhz_to_kelvin(conv.effective_frequency_mhz(eqq_zz_mhz, spin)) / beta)
}

/// Kelvin value of one unit of dimensionless temperature `1/beta`.
pub fn temperature_unit_kelvin(eqq_zz_mhz: f64, spin: SpinSystem, conv: UnitConvention) -> f64 {
    mhz_to_kelvin(conv.effective_frequency_mhz(eqq_zz_mhz, spin))
}
