//! Differential cross sections for polarized and entangled photon pairs.
//!
//! Gravitational cross sections are returned in reduced units of
//! `l_P^4 / lambda^2`, with `lambda = hbar c / E` the reduced photon
//! wavelength in the COM frame. Starting from
//!
//! ```text
//! dsigma/dOmega = c^2 hbar^2 / (64 (2 pi)^2 E^2) * sum_final |M|^2
//! M             = zeta^2 E^2 / (c^2 hbar) * m,   zeta^2 = 8 pi G / c^3
//! ```
//!
//! the prefactor collapses to `G^2 E^2 / (4 c^8) = l_P^4 / (4 lambda^2)`, so
//!
//! ```text
//! dsigma/dOmega = (l_P^4 / lambda^2) * (1/4) * sum_{xi3 xi4} |sum_{xi1 xi2} c_{xi1 xi2} m_{xi1 xi2 xi3 xi4}|^2
//! ```
//!
//! and the unpolarized cross section carries an extra `1/4` from the
//! average over initial polarizations.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::kinematics::{PolPattern, Polarization};
use crate::pqg::{closed_form_element, closed_form_matrix, AmplitudeMatrix};
use crate::qed::{qed_element_1212, qed_element_1221, QedContext};

const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Amplitudes below this magnitude have no defined phase.
const PHASE_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Pqg,
    Qed,
}

/// The two-photon state `cos(phi)|1,2> + e^{i rho} sin(phi)|2,1>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateParams {
    phi: f64,
    rho: f64,
}

impl StateParams {
    /// `phi` in `[0, pi/2]`, `rho` in `[-pi/2, 3 pi/2)`.
    pub fn new(phi: f64, rho: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&phi) {
            return Err(Error::param("phi", phi, "must lie in [0, pi/2]"));
        }
        if !(-FRAC_PI_2..1.5 * PI).contains(&rho) {
            return Err(Error::param("rho", rho, "must lie in [-pi/2, 3pi/2)"));
        }
        Ok(StateParams { phi, rho })
    }

    /// Symmetric Bell state.
    pub fn psi_plus() -> Self {
        StateParams {
            phi: PI / 4.0,
            rho: 0.0,
        }
    }

    /// Anti-symmetric Bell state.
    pub fn psi_minus() -> Self {
        StateParams {
            phi: PI / 4.0,
            rho: PI,
        }
    }

    /// The product state `|1,2>`.
    pub fn product() -> Self {
        StateParams { phi: 0.0, rho: 0.0 }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `sin(2 phi) cos(rho)`: every cross section of this family depends on
    /// the state only through this number.
    pub fn mixing(&self) -> f64 {
        (2.0 * self.phi).sin() * self.rho.cos()
    }

    pub fn coefficients(&self) -> TwoPhotonPolState {
        let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
        c[0][1] = Complex64::new(self.phi.cos(), 0.0);
        c[1][0] = Complex64::from_polar(self.phi.sin(), self.rho);
        TwoPhotonPolState { c }
    }
}

/// General initial polarization state `sum c[xi1][xi2] |xi1, xi2>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPhotonPolState {
    c: [[Complex64; 2]; 2],
}

impl TwoPhotonPolState {
    pub fn from_coefficients(c: [[Complex64; 2]; 2]) -> Result<Self> {
        let norm: f64 = c.iter().flatten().map(|z| z.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(TwoPhotonPolState { c })
    }

    /// Basis state `|xi1, xi2>`.
    pub fn basis(first: Polarization, second: Polarization) -> Self {
        let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
        c[first.index()][second.index()] = Complex64::new(1.0, 0.0);
        TwoPhotonPolState { c }
    }

    pub fn coefficient(&self, first: Polarization, second: Polarization) -> Complex64 {
        self.c[first.index()][second.index()]
    }

    pub fn coefficients(&self) -> &[[Complex64; 2]; 2] {
        &self.c
    }
}

impl From<StateParams> for TwoPhotonPolState {
    fn from(p: StateParams) -> Self {
        p.coefficients()
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(Error::ThetaOutOfRange(theta))
    }
}

fn pattern(l: [u8; 4]) -> PolPattern {
    PolPattern::from_labels(l).expect("static labels")
}

/// Polarization-averaged cross section, closed form:
/// `32 [1 + cos^16(theta/2) + sin^16(theta/2)] / sin^4(theta)`.
pub fn dcs_averaged(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let (s_half, c_half) = (theta / 2.0).sin_cos();
    let s = theta.sin();
    Ok(32.0 * (1.0 + c_half.powi(16) + s_half.powi(16)) / s.powi(4))
}

/// Polarization-averaged cross section from an amplitude matrix:
/// `(1/4) * (1/4) sum |m|^2`.
pub fn dcs_averaged_from_matrix(matrix: &AmplitudeMatrix) -> f64 {
    matrix.norm_sqr_sum() / 16.0
}

/// Cross section for an arbitrary initial polarization state, summed over
/// final polarizations.
pub fn dcs_general_state(state: &TwoPhotonPolState, matrix: &AmplitudeMatrix) -> f64 {
    let c = state.coefficients();
    let mut total = 0.0;
    for x3 in 0..2 {
        for x4 in 0..2 {
            let mut amp = Complex64::new(0.0, 0.0);
            for x1 in 0..2 {
                for x2 in 0..2 {
                    amp += c[x1][x2] * matrix.at(x1, x2, x3, x4);
                }
            }
            total += amp.norm_sqr();
        }
    }
    total / 4.0
}

/// Entangled-state gravitational cross section, closed form:
/// `8/sin^4 [4(1 + s) + (1 - s)(cos + cos^3)^2]` with `s = sin(2 phi) cos(rho)`.
pub fn dcs_entangled_pqg(theta: f64, state: &StateParams) -> Result<f64> {
    check_theta(theta)?;
    let s = state.mixing();
    let c = theta.cos();
    let k = c + c * c * c;
    Ok(8.0 / theta.sin().powi(4) * (4.0 * (1.0 + s) + (1.0 - s) * k * k))
}

/// The same cross section assembled from the two interfering amplitudes,
/// `(1/4)(|m_1212|^2 + |m_1221|^2 + 2 s Re(m_1212 m_1221^*))`.
pub fn dcs_entangled_pqg_interference(theta: f64, state: &StateParams) -> Result<f64> {
    let a = closed_form_element(pattern([1, 2, 1, 2]), theta)?;
    let b = closed_form_element(pattern([1, 2, 2, 1]), theta)?;
    Ok((a * a + b * b + 2.0 * state.mixing() * a * b) / 4.0)
}

/// Relative phase `arg m_theta - arg m_{pi - theta}` of the 1212 element,
/// normalized to `(-pi, pi]`.
pub fn relative_phase(theta: f64, theory: Theory) -> Result<f64> {
    let (a, b) = match theory {
        Theory::Pqg => {
            let p = pattern([1, 2, 1, 2]);
            (
                Complex64::new(closed_form_element(p, theta)?, 0.0),
                Complex64::new(closed_form_element(p, PI - theta)?, 0.0),
            )
        }
        Theory::Qed => (qed_element_1212(theta), qed_element_1212(PI - theta)),
    };
    if a.norm() < PHASE_FLOOR || b.norm() < PHASE_FLOOR {
        return Err(Error::UndefinedPhase(theta));
    }
    // arg(a b*) is already in (-pi, pi]
    Ok((a * b.conj()).arg())
}

/// `alpha^4 / (2 * 45^2 (2 pi)^2) * lambda_e^8 / lambda^6`, in m^2/sr.
pub fn qed_prefactor(ctx: &QedContext, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let alpha = ctx.fine_structure_constant;
    let ratio = ctx.compton_wavelength / lambda;
    Ok(alpha.powi(4) / (2.0 * 45.0 * 45.0 * (2.0 * PI).powi(2)) * ratio.powi(8) * lambda * lambda)
}

/// Bracket of the closed-form QED cross section:
/// `(1 + s)(31 + 3 cos^2)^2 + (1 - s) 22^2 cos^2`.
pub fn qed_bracket(theta: f64, state: &StateParams) -> f64 {
    let s = state.mixing();
    let c = theta.cos();
    let even = 31.0 + 3.0 * c * c;
    (1.0 + s) * even * even + (1.0 - s) * 484.0 * c * c
}

/// Entangled-state QED cross section in m^2/sr, closed form.
pub fn dcs_entangled_qed(
    theta: f64,
    state: &StateParams,
    ctx: &QedContext,
    lambda: f64,
) -> Result<f64> {
    Ok(qed_prefactor(ctx, lambda)? * qed_bracket(theta, state))
}

/// The QED cross section assembled from the 1212 and 1221 elements with the
/// generic two-amplitude interference form and the full prefactor
/// `c^2 hbar^2 / (64 (2 pi)^2 E^2) = lambda^2 / (256 pi^2)`.
pub fn dcs_entangled_qed_interference(
    theta: f64,
    state: &StateParams,
    ctx: &QedContext,
    lambda: f64,
) -> Result<f64> {
    check_lambda(lambda)?;
    let alpha = ctx.fine_structure_constant;
    // 4 alpha^2 E^4 / (45 m^4 c^8) with E / (m c^2) = lambda_e / lambda
    let unit = 4.0 * alpha * alpha / 45.0 * (ctx.compton_wavelength / lambda).powi(4);
    let a = unit * qed_element_1212(theta);
    let b = unit * qed_element_1221(theta);
    let sum = a.norm_sqr() + b.norm_sqr() + 2.0 * state.mixing() * (a * b.conj()).re;
    Ok(lambda * lambda / (64.0 * (2.0 * PI).powi(2)) * sum)
}

/// Maximum of the QED cross section over `theta in [0, pi]`. The bracket is
/// increasing in `cos^2`, so the maximum sits at forward/backward scattering.
pub fn qed_max_dcs(state: &StateParams, ctx: &QedContext, lambda: f64) -> Result<f64> {
    Ok(qed_prefactor(ctx, lambda)? * qed_bracket(0.0, state))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::param("lambda", lambda, "must be positive"))
    }
}

/// `reduced * l_P^4 / lambda^2`, in m^2/sr.
pub fn si_convert(reduced: f64, lambda: f64, consts: &PhysicalConstants) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(reduced * consts.planck_length().powi(4) / (lambda * lambda))
}

/// Gravitational prefactor `32 l_P^4 / lambda^2` in m^2/sr.
pub fn pqg_prefactor(lambda: f64, consts: &PhysicalConstants) -> Result<f64> {
    si_convert(32.0, lambda, consts)
}

/// `floor(log10(x))`, the exponent in scientific notation.
pub fn decimal_exponent(x: f64) -> i32 {
    x.abs().log10().floor() as i32
}

/// Convenience: general-state cross section from the closed-form matrix.
pub fn dcs_state_closed_form(theta: f64, state: &TwoPhotonPolState) -> Result<f64> {
    Ok(dcs_general_state(state, &closed_form_matrix(theta)?))
}
