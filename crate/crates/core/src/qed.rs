//! Low-energy QED photon-photon amplitudes.
//!
//! Values are in units of `4 alpha^2 E^4 / (45 m^4 c^8)`. The phase is chosen
//! so that `i M_1212` equals the positive real polynomial.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{ELECTRON_MASS, FINE_STRUCTURE, REDUCED_PLANCK, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QedContext {
    /// Reduced Compton wavelength of the electron `hbar / (m c)`, meters.
    pub compton_wavelength: f64,
    pub fine_structure_constant: f64,
}

impl Default for QedContext {
    fn default() -> Self {
        QedContext {
            compton_wavelength: REDUCED_PLANCK / (ELECTRON_MASS * SPEED_OF_LIGHT),
            fine_structure_constant: FINE_STRUCTURE,
        }
    }
}

impl QedContext {
    pub fn new(compton_wavelength: f64, fine_structure_constant: f64) -> Result<Self> {
        if !(compton_wavelength > 0.0 && compton_wavelength.is_finite()) {
            return Err(Error::param(
                "compton_wavelength",
                compton_wavelength,
                "must be positive",
            ));
        }
        if !(fine_structure_constant > 0.0 && fine_structure_constant.is_finite()) {
            return Err(Error::param(
                "fine_structure_constant",
                fine_structure_constant,
                "must be positive",
            ));
        }
        Ok(QedContext {
            compton_wavelength,
            fine_structure_constant,
        })
    }

    /// Context from the electron rest energy `m c^2` in joules.
    pub fn from_electron_rest_energy(
        rest_energy: f64,
        fine_structure_constant: f64,
    ) -> Result<Self> {
        Self::new(
            REDUCED_PLANCK * SPEED_OF_LIGHT / rest_energy,
            fine_structure_constant,
        )
    }

    pub fn electron_rest_energy(&self) -> f64 {
        REDUCED_PLANCK * SPEED_OF_LIGHT / self.compton_wavelength
    }
}

/// `31 + 22 cos + 3 cos^2`, never zero on [0, pi].
pub(crate) fn qed_polynomial(theta: f64) -> f64 {
    let c = theta.cos();
    31.0 + 22.0 * c + 3.0 * c * c
}

pub fn qed_element_1212(theta: f64) -> Complex64 {
    Complex64::new(0.0, -qed_polynomial(theta))
}

pub fn qed_element_1221(theta: f64) -> Complex64 {
    qed_element_1212(PI - theta)
}
