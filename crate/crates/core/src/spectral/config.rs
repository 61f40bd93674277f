use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Physical parameters of the well: width `L`, mass `m`, reduced Planck constant `ħ`.
///
/// Defaults to natural units `L = m = ħ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWellConfig")]
pub struct WellConfig {
    length: f64,
    mass: f64,
    hbar: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWellConfig {
    #[serde(default = "one")]
    length: f64,
    #[serde(default = "one")]
    mass: f64,
    #[serde(default = "one")]
    hbar: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RawWellConfig> for WellConfig {
    type Error = Error;

    fn try_from(raw: RawWellConfig) -> Result<Self> {
        WellConfig::new(raw.length, raw.mass, raw.hbar)
    }
}

impl Default for WellConfig {
    fn default() -> Self {
        WellConfig { length: 1.0, mass: 1.0, hbar: 1.0 }
    }
}

impl WellConfig {
    pub fn new(length: f64, mass: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("length", length), ("mass", mass), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(WellConfig { length, mass, hbar })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `ħ²/2m`
    pub fn hbar2_over_2m(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    /// `ħ²/(mL)`, the prefactor of the force matrix elements.
    pub fn force_scale(&self) -> f64 {
        self.hbar * self.hbar / (self.mass * self.length)
    }

    /// `kₙ = nπ/L`
    pub fn wavenumber(&self, n: usize) -> f64 {
        n as f64 * PI / self.length
    }
}
