//! Graviton-mediated photon-photon scattering at tree level.
//!
//! The crate evaluates the three graviton-exchange diagrams from the
//! photon-photon-graviton vertex and the harmonic-gauge propagator, checks
//! them against the analytic amplitude matrix, and builds differential cross
//! sections for polarization-entangled photon pairs, the low-energy QED
//! comparison and the delayed-coincidence factor.
//!
//! Internal units are `hbar = c = 1` with the photon energy set to one.
//! Amplitudes are reported divided by `zeta^2 E^2 / (c^2 hbar)` and
//! gravitational cross sections in multiples of `l_P^4 / lambda^2`.

pub mod coincidence;
pub mod constants;
pub mod cross_sections;
pub mod error;
pub mod kinematics;
pub mod lorentz;
pub mod pqg;
pub mod qed;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
