//! Center-of-momentum kinematics for two-photon scattering.
//!
//! Energies are normalized to 1 (hbar = c = 1), so every momentum is
//! `(1, n)` with a unit direction `n`. The scattering plane is the x-z plane:
//! photon 1 moves along +z and photon 3 leaves at polar angle `theta`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::FourVector;

/// Linear polarization relative to the scattering plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarization {
    /// Label 1: perpendicular to the plane of collision.
    Perpendicular,
    /// Label 2: in the plane of collision.
    Parallel,
}

impl Polarization {
    pub const ALL: [Polarization; 2] = [Polarization::Perpendicular, Polarization::Parallel];

    pub fn from_label(label: u8) -> Option<Self> {
        match label {
            1 => Some(Polarization::Perpendicular),
            2 => Some(Polarization::Parallel),
            _ => None,
        }
    }

    pub fn label(self) -> u8 {
        match self {
            Polarization::Perpendicular => 1,
            Polarization::Parallel => 2,
        }
    }

    /// Zero-based position, for array indexing.
    pub fn index(self) -> usize {
        self.label() as usize - 1
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Polarization labels of photons 1..4, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolPattern(pub [Polarization; 4]);

impl PolPattern {
    /// Parse labels such as `[1, 2, 1, 2]`.
    pub fn from_labels(labels: [u8; 4]) -> Option<Self> {
        let mut out = [Polarization::Perpendicular; 4];
        for (slot, &l) in out.iter_mut().zip(labels.iter()) {
            *slot = Polarization::from_label(l)?;
        }
        Some(PolPattern(out))
    }

    /// All 16 patterns in lexicographic label order (1111, 1112, ..., 2222).
    pub fn all() -> impl Iterator<Item = PolPattern> {
        (0..16u8).map(|bits| {
            PolPattern(std::array::from_fn(|i| {
                if bits >> (3 - i) & 1 == 1 {
                    Polarization::Parallel
                } else {
                    Polarization::Perpendicular
                }
            }))
        })
    }

    pub fn labels(&self) -> [u8; 4] {
        self.0.map(Polarization::label)
    }

    pub fn parallel_count(&self) -> usize {
        self.0
            .iter()
            .filter(|p| **p == Polarization::Parallel)
            .count()
    }

    /// Swap the two outgoing labels.
    pub fn swap_outgoing(&self) -> PolPattern {
        let [a, b, c, d] = self.0;
        PolPattern([a, b, d, c])
    }
}

impl fmt::Display for PolPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.0 {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Momenta and linear polarization vectors for a COM scattering event.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicConfig {
    theta: f64,
    momenta: [FourVector; 4],
    polarizations: [[FourVector; 2]; 4],
}

impl KinematicConfig {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Momentum of photon `i` (zero-based: 0..4 for photons 1..4).
    pub fn momentum(&self, i: usize) -> FourVector {
        self.momenta[i]
    }

    pub fn momenta(&self) -> &[FourVector; 4] {
        &self.momenta
    }

    pub fn polarization(&self, i: usize, pol: Polarization) -> FourVector {
        self.polarizations[i][pol.index()]
    }

    /// Polarization vectors selected by a pattern.
    pub fn polarizations_for(&self, pattern: PolPattern) -> [FourVector; 4] {
        std::array::from_fn(|i| self.polarization(i, pattern.0[i]))
    }
}

/// Direction `(sin a, 0, cos a)` in the x-z plane, as a null momentum with
/// unit energy, and its in-plane polarization `d/da` of the direction.
fn in_plane_photon(polar: f64) -> (FourVector, FourVector) {
    let (s, c) = polar.sin_cos();
    (
        FourVector::from_finite([1.0, s, 0.0, c]),
        FourVector::from_finite([0.0, c, 0.0, -s]),
    )
}

/// COM configuration at scattering angle `theta`.
///
/// Parallel polarizations are the unit tangent of each photon's polar
/// angle, which gives `eps_1 = (0,1,0,0)`, `eps_2 = (0,-1,0,0)`,
/// `eps_3 = (0, cos, 0, -sin)` and `eps_4 = -eps_3`. Perpendicular
/// polarizations are `(0,0,1,0)` for every photon.
pub fn com_config(theta: f64) -> Result<KinematicConfig> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    let perp = FourVector::from_finite([0.0, 0.0, 1.0, 0.0]);
    let polar = [0.0, PI, theta, theta + PI];
    let mut momenta = [FourVector::ZERO; 4];
    let mut polarizations = [[FourVector::ZERO; 2]; 4];
    for (i, &a) in polar.iter().enumerate() {
        let (p, par) = in_plane_photon(a);
        momenta[i] = p;
        polarizations[i] = [perp, par];
    }
    // sin(pi) is ~1.2e-16, not 0; pin the exact axis values
    momenta[1] = FourVector::from_finite([1.0, 0.0, 0.0, -1.0]);
    polarizations[1][1] = FourVector::from_finite([0.0, -1.0, 0.0, 0.0]);
    let (s, c) = theta.sin_cos();
    momenta[3] = FourVector::from_finite([1.0, -s, 0.0, -c]);
    polarizations[3][1] = FourVector::from_finite([0.0, -c, 0.0, s]);
    Ok(KinematicConfig {
        theta,
        momenta,
        polarizations,
    })
}

/// Gauge transformation `eps + xi * p`.
pub fn gauge_shift(eps: &FourVector, p: &FourVector, xi: f64) -> FourVector {
    *eps + xi * *p
}
