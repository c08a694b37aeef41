//! Delayed-coincidence detection factor for the two-photon state family.
//!
//! The joint detection probability of a parallel-polarized photon at `x` and a
//! perpendicular-polarized one at `x'` is proportional to
//! `1 + sin(2 phi) cos(delta + rho)` with `delta = (2 / hbar) p.(x' - x)`.
//! The proportionality constant is dropped.

use serde::{Deserialize, Serialize};

use crate::cross_sections::StateParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceQuery {
    phase: f64,
    pub state: StateParams,
}

impl CoincidenceQuery {
    pub fn new(phase: f64, state: StateParams) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::param("phase", phase, "must be finite"));
        }
        Ok(CoincidenceQuery { phase, state })
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }
}

pub fn coincidence_factor(q: &CoincidenceQuery) -> f64 {
    let phi = q.state.phi();
    1.0 + (2.0 * phi).sin() * (q.phase + q.state.rho()).cos()
}

/// Phase `delta = 2 d / lambda` for an equal-time separation `d` along the
/// propagation axis, with `lambda = hbar c / E`.
pub fn separation_to_phase(distance: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", lambda, "must be positive"));
    }
    if !(distance >= 0.0 && distance.is_finite()) {
        return Err(Error::param("distance", distance, "must be non-negative"));
    }
    Ok(2.0 * distance / lambda)
}
