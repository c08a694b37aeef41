//! Diagram-sum vs closed-form verification suite.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kinematics::{com_config, gauge_shift, PolPattern};
use crate::pqg::{closed_form_matrix, FeynmanRules, VertexFactor, DIAGRAM_TO_CLOSED_FORM_SIGN};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Relative tolerance for diagram sum vs closed form.
    pub amplitude_tolerance: f64,
    /// Relative tolerance for gauge-shift invariance.
    pub gauge_tolerance: f64,
    pub grid_points: usize,
    /// The grid covers `(margin, pi - margin)`.
    pub theta_margin: f64,
    /// Every `gauge_stride`-th grid angle enters the gauge suite.
    pub gauge_stride: usize,
    pub gauge_xi_range: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            amplitude_tolerance: 1e-9,
            gauge_tolerance: 1e-9,
            grid_points: 100,
            theta_margin: 0.05,
            gauge_stride: 4,
            gauge_xi_range: 10.0,
            seed: 0x5eed_cafe,
        }
    }
}

impl VerifyConfig {
    /// Cell midpoints of `grid_points` equal cells on `(margin, pi - margin)`.
    pub fn grid(&self) -> Vec<f64> {
        let span = PI - 2.0 * self.theta_margin;
        let n = self.grid_points as f64;
        (0..self.grid_points)
            .map(|k| self.theta_margin + (k as f64 + 0.5) * span / n)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternReport {
    pub pattern: String,
    /// Whether the closed form lists this pattern as nonzero.
    pub nonzero: bool,
    /// Max over the grid of `|sign * sum - closed| / |closed|` for nonzero
    /// patterns, or `|sum| / max_entry` for the vanishing ones.
    pub max_relative_deviation: f64,
    pub worst_theta: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub grid_points: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    pub global_sign: f64,
    pub vertex_weights: [f64; 5],
    pub amplitude_tolerance: f64,
    pub gauge_tolerance: f64,
    pub patterns: Vec<PatternReport>,
    pub gauge_checks: usize,
    pub gauge_max_deviation: f64,
    pub max_imaginary: f64,
    pub pass: bool,
}

pub fn run_verify(config: &VerifyConfig, vertex: VertexFactor) -> Result<VerifyReport> {
    let rules = FeynmanRules::new(vertex);
    let grid = config.grid();
    let mut patterns: Vec<PatternReport> = PolPattern::all()
        .map(|p| PatternReport {
            pattern: p.to_string(),
            nonzero: p.parallel_count() % 2 == 0,
            max_relative_deviation: 0.0,
            worst_theta: f64::NAN,
            pass: true,
        })
        .collect();
    let mut max_imaginary: f64 = 0.0;
    let mut gauge_max: f64 = 0.0;
    let mut gauge_checks = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for (k, &theta) in grid.iter().enumerate() {
        let cfg = com_config(theta)?;
        let closed = closed_form_matrix(theta)?;
        let scale = closed.largest_abs();
        for (report, pattern) in patterns.iter_mut().zip(PolPattern::all()) {
            let sum = rules.amplitude_sum(&cfg, pattern)?;
            let value = DIAGRAM_TO_CLOSED_FORM_SIGN * sum;
            let reference = closed.get(pattern);
            let dev = if report.nonzero {
                (value - reference).norm() / reference.norm()
            } else {
                value.norm() / scale
            };
            max_imaginary = max_imaginary.max(value.im.abs() / scale);
            if !(dev <= report.max_relative_deviation) {
                report.max_relative_deviation = dev;
                report.worst_theta = theta;
            }

            if k % config.gauge_stride.max(1) == 0 {
                let eps = cfg.polarizations_for(pattern);
                let momenta = cfg.momenta();
                for leg in 0..4 {
                    let xi = rng.gen_range(-config.gauge_xi_range..=config.gauge_xi_range);
                    let mut shifted = eps;
                    shifted[leg] = gauge_shift(&eps[leg], &momenta[leg], xi);
                    let moved = rules.sum_with_polarizations(&cfg, &shifted)?;
                    let dev = (moved - sum).norm() / scale;
                    gauge_max = if dev.is_nan() {
                        f64::INFINITY
                    } else {
                        gauge_max.max(dev)
                    };
                    gauge_checks += 1;
                }
            }
        }
    }

    for report in &mut patterns {
        report.pass = report.max_relative_deviation <= config.amplitude_tolerance;
    }
    let pass = patterns.iter().all(|p| p.pass)
        && gauge_max <= config.gauge_tolerance
        && max_imaginary <= config.amplitude_tolerance;

    Ok(VerifyReport {
        grid_points: grid.len(),
        theta_min: grid.first().copied().unwrap_or(f64::NAN),
        theta_max: grid.last().copied().unwrap_or(f64::NAN),
        global_sign: DIAGRAM_TO_CLOSED_FORM_SIGN,
        vertex_weights: vertex.weights,
        amplitude_tolerance: config.amplitude_tolerance,
        gauge_tolerance: config.gauge_tolerance,
        patterns,
        gauge_checks,
        gauge_max_deviation: gauge_max,
        max_imaginary,
        pass,
    })
}
