//! Tree-level graviton exchange between photons.
//!
//! All amplitudes are in reduced units: the physical amplitude divided by
//! `zeta^2 E^2 / (c^2 hbar)` with `zeta^2 = 8 pi G / c^3`. In these units an
//! amplitude depends only on the scattering angle and the polarizations.
//!
//! Two independent routes are provided:
//!
//! * [`FeynmanRules`] contracts the photon-photon-graviton vertex with the
//!   harmonic-gauge propagator for the t, u and s channel diagrams;
//! * [`closed_form_element`] evaluates the known analytic matrix elements.
//!
//! The diagram sum equals the closed form times [`DIAGRAM_TO_CLOSED_FORM_SIGN`].
//! See `ERRATA.md` at the repository root for the conventions that fix this.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{com_config, KinematicConfig, PolPattern, Polarization};
use crate::lorentz::{
    contract_rank4_vectors, lower_index, minkowski_dot, FourVector, Metric, Rank2Tensor,
    Rank4Tensor, SlotPair,
};

/// Global sign relating the summed diagrams to the closed-form elements:
/// `closed_form = DIAGRAM_TO_CLOSED_FORM_SIGN * (M_t + M_u + M_s)`.
pub const DIAGRAM_TO_CLOSED_FORM_SIGN: f64 = -1.0;

/// Channels with `|q^2|` below this are rejected as sitting on the pole.
pub const POLE_TOLERANCE: f64 = 1e-10;

/// Graviton exchange topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    /// Vertices (p1, p3) and (p2, p4); `q = p1 - p3`.
    T,
    /// Vertices (p1, p4) and (p2, p3); `q = p1 - p4`.
    U,
    /// Vertices (p1, p2) and (p3, p4); `q = p1 + p2`.
    S,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::T, Channel::U, Channel::S];

    /// Photon indices (zero-based) at each vertex, as `(primed, unprimed)`
    /// arguments of the vertex tensor.
    fn vertex_legs(self) -> [(usize, usize); 2] {
        match self {
            Channel::T => [(2, 0), (3, 1)],
            Channel::U => [(3, 0), (2, 1)],
            Channel::S => [(1, 0), (3, 2)],
        }
    }

    pub fn exchanged_momentum(self, cfg: &KinematicConfig) -> FourVector {
        let p = cfg.momenta();
        match self {
            Channel::T => p[0] - p[2],
            Channel::U => p[0] - p[3],
            Channel::S => p[0] + p[1],
        }
    }
}

/// Weights of the five summands of the vertex factor.
///
/// The standard vertex has all weights equal to one. Other weights exist
/// only to build negative controls for the verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexFactor {
    pub weights: [f64; 5],
}

impl Default for VertexFactor {
    fn default() -> Self {
        VertexFactor { weights: [1.0; 5] }
    }
}

impl VertexFactor {
    pub fn standard() -> Self {
        Self::default()
    }

    /// Multiply summand `term` (0..5) by `1 + delta`.
    pub fn perturbed(term: usize, delta: f64) -> Self {
        let mut v = Self::default();
        v.weights[term % 5] *= 1.0 + delta;
        v
    }

    pub fn is_standard(&self) -> bool {
        self.weights == [1.0; 5]
    }

    /// The vertex tensor `T_{mu nu beta alpha}(p', p)` stored in index order
    /// `(mu, nu, beta, alpha)`: `beta` belongs to the photon with momentum
    /// `p'`, `alpha` to the photon with momentum `p`. The coupling `zeta` is
    /// stripped and the factor 2 relative to the common textbook
    /// normalization is included.
    pub fn tensor(&self, p_prime: &FourVector, p: &FourVector) -> Rank4Tensor {
        let pp = lower_index(p_prime);
        let q = lower_index(p);
        let pdot = minkowski_dot(p_prime, p);
        let w = self.weights;
        let eta = Metric::component;
        Rank4Tensor::from_fn(|mu, nu, beta, alpha| {
            w[0] * pp[alpha] * (q[mu] * eta(beta, nu) + q[nu] * eta(beta, mu))
                + w[1] * q[beta] * (pp[mu] * eta(alpha, nu) + pp[nu] * eta(alpha, mu))
                - w[2] * eta(alpha, beta) * (pp[mu] * q[nu] + q[mu] * pp[nu])
                + w[3] * eta(mu, nu) * (pdot * eta(alpha, beta) - q[beta] * pp[alpha])
                - w[4] * pdot * (eta(mu, alpha) * eta(nu, beta) + eta(mu, beta) * eta(nu, alpha))
        })
        .expect("vertex tensor of finite momenta is finite")
    }
}

/// Standard vertex tensor `T_{mu nu beta alpha}(p_out, p_in)`.
pub fn vertex_tensor(p_out: &FourVector, p_in: &FourVector) -> Rank4Tensor {
    VertexFactor::standard().tensor(p_out, p_in)
}

/// Harmonic-gauge propagator numerator
/// `P_{mu nu alpha beta} = (eta_{mu alpha} eta_{nu beta} + eta_{mu beta} eta_{nu alpha} - eta_{mu nu} eta_{alpha beta}) / 2`.
pub fn graviton_propagator_numerator() -> Rank4Tensor {
    let eta = Metric::component;
    Rank4Tensor::from_fn(|mu, nu, alpha, beta| {
        0.5 * (eta(mu, alpha) * eta(nu, beta) + eta(mu, beta) * eta(nu, alpha)
            - eta(mu, nu) * eta(alpha, beta))
    })
    .expect("constant tensor is finite")
}

/// Diagram evaluator for a given vertex factor.
#[derive(Debug, Clone)]
pub struct FeynmanRules {
    vertex: VertexFactor,
    propagator: Rank4Tensor,
}

impl Default for FeynmanRules {
    fn default() -> Self {
        Self::new(VertexFactor::standard())
    }
}

impl FeynmanRules {
    pub fn new(vertex: VertexFactor) -> Self {
        FeynmanRules {
            vertex,
            propagator: graviton_propagator_numerator(),
        }
    }

    pub fn vertex(&self) -> &VertexFactor {
        &self.vertex
    }

    /// `eps'^beta eps^alpha T_{mu nu beta alpha}(p', p)` with upper `mu nu`.
    fn vertex_current(
        &self,
        p_prime: &FourVector,
        eps_prime: &FourVector,
        p: &FourVector,
        eps: &FourVector,
    ) -> Rank2Tensor {
        let t = self.vertex.tensor(p_prime, p);
        let slots = SlotPair::new(2, 3).expect("static slots");
        Metric::raise_rank2(&contract_rank4_vectors(&t, eps_prime, eps, slots))
    }

    /// Single-diagram amplitude with explicit polarization vectors.
    ///
    /// Returns `-[eps eps T]^{mu nu} P_{mu nu rho sigma} [eps eps T]^{rho sigma} / q^2`.
    /// Individual diagrams are convention dependent; only the sum is
    /// physical.
    pub fn diagram_with_polarizations(
        &self,
        channel: Channel,
        cfg: &KinematicConfig,
        eps: &[FourVector; 4],
    ) -> Result<Complex64> {
        let q = channel.exchanged_momentum(cfg);
        let q2 = q.square();
        if q2.abs() < POLE_TOLERANCE {
            return Err(Error::Pole { channel, q2 });
        }
        let p = cfg.momenta();
        let [(a1, b1), (a2, b2)] = channel.vertex_legs();
        let left = self.vertex_current(&p[a1], &eps[a1], &p[b1], &eps[b1]);
        let right = self.vertex_current(&p[a2], &eps[a2], &p[b2], &eps[b2]);
        let value = -self.propagator.sandwich(&left, &right) / q2;
        Ok(Complex64::new(value, 0.0))
    }

    pub fn diagram_amplitude(
        &self,
        channel: Channel,
        cfg: &KinematicConfig,
        pattern: PolPattern,
    ) -> Result<Complex64> {
        self.diagram_with_polarizations(channel, cfg, &cfg.polarizations_for(pattern))
    }

    /// `M_t + M_u + M_s` for explicit polarization vectors (used by the
    /// gauge-invariance checks).
    pub fn sum_with_polarizations(
        &self,
        cfg: &KinematicConfig,
        eps: &[FourVector; 4],
    ) -> Result<Complex64> {
        Channel::ALL
            .iter()
            .map(|&ch| self.diagram_with_polarizations(ch, cfg, eps))
            .sum()
    }

    pub fn amplitude_sum(&self, cfg: &KinematicConfig, pattern: PolPattern) -> Result<Complex64> {
        self.sum_with_polarizations(cfg, &cfg.polarizations_for(pattern))
    }

    /// Full matrix from the diagrams, expressed in the closed-form sign
    /// convention.
    pub fn amplitude_matrix(&self, theta: f64) -> Result<AmplitudeMatrix> {
        let cfg = com_config(theta)?;
        let mut m = AmplitudeMatrix::zero(theta);
        for pattern in PolPattern::all() {
            m.set(
                pattern,
                DIAGRAM_TO_CLOSED_FORM_SIGN * self.amplitude_sum(&cfg, pattern)?,
            );
        }
        Ok(m)
    }
}

pub fn diagram_amplitude(
    channel: Channel,
    cfg: &KinematicConfig,
    pattern: PolPattern,
) -> Result<Complex64> {
    FeynmanRules::default().diagram_amplitude(channel, cfg, pattern)
}

/// Sum of the three tree diagrams, in the raw diagram convention.
pub fn amplitude_sum(cfg: &KinematicConfig, pattern: PolPattern) -> Result<Complex64> {
    FeynmanRules::default().amplitude_sum(cfg, pattern)
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(Error::ThetaOutOfRange(theta))
    }
}

/// Analytic reduced amplitude for one polarization pattern.
///
/// Only the eight patterns with an even number of parallel labels are
/// nonzero:
///
/// | pattern       | numerator over `sin^2 theta` |
/// |---------------|------------------------------|
/// | 1111, 2222    | `-9 - 6c^2 - c^4`            |
/// | 1122, 2211    | `7 - 6c^2 - c^4`             |
/// | 1212, 2121    | `-8 - 4c - 4c^3`             |
/// | 1221, 2112    | `-8 + 4c + 4c^3`             |
pub fn closed_form_element(pattern: PolPattern, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let c = theta.cos();
    let c2 = c * c;
    let numerator = match pattern.labels() {
        [1, 1, 1, 1] | [2, 2, 2, 2] => -9.0 - 6.0 * c2 - c2 * c2,
        [1, 1, 2, 2] | [2, 2, 1, 1] => 7.0 - 6.0 * c2 - c2 * c2,
        [1, 2, 1, 2] | [2, 1, 2, 1] => -8.0 - 4.0 * c - 4.0 * c * c2,
        [1, 2, 2, 1] | [2, 1, 1, 2] => -8.0 + 4.0 * c + 4.0 * c * c2,
        _ => return Ok(0.0),
    };
    let s = theta.sin();
    Ok(numerator / (s * s))
}

pub fn closed_form_matrix(theta: f64) -> Result<AmplitudeMatrix> {
    check_theta(theta)?;
    let mut m = AmplitudeMatrix::zero(theta);
    for pattern in PolPattern::all() {
        m.set(
            pattern,
            Complex64::new(closed_form_element(pattern, theta)?, 0.0),
        );
    }
    Ok(m)
}

/// Reduced amplitudes `m[xi1][xi2][xi3][xi4]` at one scattering angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeMatrix {
    pub theta: f64,
    m: [[[[Complex64; 2]; 2]; 2]; 2],
}

impl AmplitudeMatrix {
    pub fn zero(theta: f64) -> Self {
        AmplitudeMatrix {
            theta,
            m: [[[[Complex64::new(0.0, 0.0); 2]; 2]; 2]; 2],
        }
    }

    pub fn get(&self, pattern: PolPattern) -> Complex64 {
        let [a, b, c, d] = pattern.0.map(Polarization::index);
        self.m[a][b][c][d]
    }

    /// Zero-based index access.
    pub fn at(&self, a: usize, b: usize, c: usize, d: usize) -> Complex64 {
        self.m[a][b][c][d]
    }

    pub fn set(&mut self, pattern: PolPattern, value: Complex64) {
        let [a, b, c, d] = pattern.0.map(Polarization::index);
        self.m[a][b][c][d] = value;
    }

    pub fn set_at(&mut self, idx: [usize; 4], value: Complex64) {
        self.m[idx[0]][idx[1]][idx[2]][idx[3]] = value;
    }

    pub fn largest_abs(&self) -> f64 {
        PolPattern::all().fold(0.0, |acc, p| acc.max(self.get(p).norm()))
    }

    /// `sum |m|^2` over all 16 patterns.
    pub fn norm_sqr_sum(&self) -> f64 {
        PolPattern::all().map(|p| self.get(p).norm_sqr()).sum()
    }
}
