//! SI constants (CODATA 2018).

use serde::{Deserialize, Serialize};

pub const GRAVITATIONAL_CONSTANT: f64 = 6.67430e-11;
pub const REDUCED_PLANCK: f64 = 1.054571817e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const ELECTRON_MASS: f64 = 9.1093837015e-31;
pub const FINE_STRUCTURE: f64 = 7.2973525693e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub g: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            g: GRAVITATIONAL_CONSTANT,
            hbar: REDUCED_PLANCK,
            c: SPEED_OF_LIGHT,
        }
    }
}

impl PhysicalConstants {
    /// `l_P = sqrt(G hbar / c^3)` in meters.
    pub fn planck_length(&self) -> f64 {
        (self.g * self.hbar / self.c.powi(3)).sqrt()
    }

    /// Gravitational coupling `zeta = sqrt(8 pi G / c^3)`.
    pub fn zeta(&self) -> f64 {
        (8.0 * std::f64::consts::PI * self.g / self.c.powi(3)).sqrt()
    }

    /// Reduced wavelength `lambda = hbar c / E` for photon energy `E` in joules.
    pub fn reduced_wavelength(&self, energy: f64) -> f64 {
        self.hbar * self.c / energy
    }
}
