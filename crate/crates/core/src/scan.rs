//! Angular scans producing sampled cross-section curves.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coincidence::{coincidence_factor, CoincidenceQuery};
use crate::constants::PhysicalConstants;
use crate::cross_sections::{
    dcs_averaged, dcs_entangled_pqg, dcs_entangled_qed, qed_bracket, si_convert, StateParams,
    Theory,
};
use crate::error::{Error, Result};
use crate::pqg::{closed_form_matrix, AmplitudeMatrix, FeynmanRules};
use crate::qed::QedContext;

/// Default scan edges, away from the forward/backward divergence.
pub const DEFAULT_THETA_MIN: f64 = 0.01;
pub const DEFAULT_THETA_MAX: f64 = PI - 0.01;

/// Reduced values are divided by this in `figure3` units (`8 l_P^4/lambda^2 x 10`).
pub const FIGURE3_SCALE: f64 = 80.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// Multiples of `l_P^4 / lambda^2` (gravity) or of the QED prefactor.
    Reduced,
    /// m^2/sr.
    Si,
    /// Reduced gravity units divided by [`FIGURE3_SCALE`].
    Figure3,
}

/// Evenly spaced angles, endpoints included, strictly inside `(0, pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaGrid {
    pub theta_min: f64,
    pub theta_max: f64,
    pub samples: usize,
}

impl Default for ThetaGrid {
    fn default() -> Self {
        ThetaGrid {
            theta_min: DEFAULT_THETA_MIN,
            theta_max: DEFAULT_THETA_MAX,
            samples: 100,
        }
    }
}

impl ThetaGrid {
    pub fn new(theta_min: f64, theta_max: f64, samples: usize) -> Result<Self> {
        if !(theta_min > 0.0 && theta_min < theta_max && theta_max < PI) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < theta_min < theta_max < pi, got [{theta_min}, {theta_max}]"
            )));
        }
        if samples < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples, got {samples}"
            )));
        }
        Ok(ThetaGrid {
            theta_min,
            theta_max,
            samples,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.theta_min, self.theta_max, self.samples)
    }
}

pub fn linspace(min: f64, max: f64, samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![min];
    }
    let step = (max - min) / (samples - 1) as f64;
    (0..samples)
        .map(|k| {
            if k + 1 == samples {
                max
            } else {
                min + step * k as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMetadata {
    pub label: String,
    pub theory: Theory,
    pub state: Option<StateParams>,
    pub lambda: Option<f64>,
}

/// One sampled cross-section curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DcsCurve {
    thetas: Vec<f64>,
    values: Vec<f64>,
    pub units: Units,
    pub metadata: CurveMetadata,
}

impl DcsCurve {
    pub fn new(
        thetas: Vec<f64>,
        values: Vec<f64>,
        units: Units,
        metadata: CurveMetadata,
    ) -> Result<Self> {
        if thetas.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "{} angles but {} values",
                thetas.len(),
                values.len()
            )));
        }
        if thetas.iter().any(|t| !(*t > 0.0 && *t < PI)) {
            return Err(Error::InvalidGrid("angles must lie in (0, pi)".into()));
        }
        if thetas.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(
                "angles must be strictly increasing".into(),
            ));
        }
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0)) {
            return Err(Error::param(
                "dcs",
                *v,
                "cross sections must be non-negative",
            ));
        }
        Ok(DcsCurve {
            thetas,
            values,
            units,
            metadata,
        })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DcsScanRequest {
    pub grid: ThetaGrid,
    pub units: Units,
    pub lambda: Option<f64>,
    /// Optional extra state, emitted after the four standard curves.
    pub state: Option<StateParams>,
}

/// Gravitational curves: product state, both Bell states, polarization
/// average, and optionally one extra state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DcsScan {
    pub product: DcsCurve,
    pub psi_plus: DcsCurve,
    pub psi_minus: DcsCurve,
    pub averaged: DcsCurve,
    pub state: Option<DcsCurve>,
}

impl DcsScan {
    pub fn curves(&self) -> Vec<&DcsCurve> {
        let mut out = vec![
            &self.product,
            &self.psi_plus,
            &self.psi_minus,
            &self.averaged,
        ];
        out.extend(self.state.as_ref());
        out
    }
}

fn require_lambda(units: Units, lambda: Option<f64>) -> Result<Option<f64>> {
    match (units, lambda) {
        (Units::Si, None) => Err(Error::InvalidGrid("si units require lambda".into())),
        (_, Some(l)) if !(l > 0.0 && l.is_finite()) => {
            Err(Error::param("lambda", l, "must be positive"))
        }
        (_, l) => Ok(l),
    }
}

pub fn run_dcs_scan(req: &DcsScanRequest) -> Result<DcsScan> {
    let lambda = require_lambda(req.units, req.lambda)?;
    let consts = PhysicalConstants::default();
    let thetas = req.grid.points();
    let convert = |reduced: f64| -> Result<f64> {
        match req.units {
            Units::Reduced => Ok(reduced),
            Units::Figure3 => Ok(reduced / FIGURE3_SCALE),
            Units::Si => si_convert(reduced, lambda.expect("checked"), &consts),
        }
    };
    let curve = |label: &str,
                 state: Option<StateParams>,
                 f: &dyn Fn(f64) -> Result<f64>|
     -> Result<DcsCurve> {
        let values = thetas
            .iter()
            .map(|&t| f(t).and_then(&convert))
            .collect::<Result<Vec<_>>>()?;
        DcsCurve::new(
            thetas.clone(),
            values,
            req.units,
            CurveMetadata {
                label: label.to_string(),
                theory: Theory::Pqg,
                state,
                lambda,
            },
        )
    };
    let for_state = |st: StateParams| move |t: f64| dcs_entangled_pqg(t, &st);
    Ok(DcsScan {
        product: curve(
            "dcs_product",
            Some(StateParams::product()),
            &for_state(StateParams::product()),
        )?,
        psi_plus: curve(
            "dcs_psi_plus",
            Some(StateParams::psi_plus()),
            &for_state(StateParams::psi_plus()),
        )?,
        psi_minus: curve(
            "dcs_psi_minus",
            Some(StateParams::psi_minus()),
            &for_state(StateParams::psi_minus()),
        )?,
        averaged: curve("dcs_averaged", None, &dcs_averaged)?,
        state: req
            .state
            .map(|st| curve("dcs_state", Some(st), &for_state(st)))
            .transpose()?,
    })
}

/// QED curves for the product state, both Bell states and an optional extra
/// state. Reduced units are multiples of the QED prefactor (the bracket).
pub fn run_qed_scan(req: &DcsScanRequest, ctx: &QedContext) -> Result<Vec<DcsCurve>> {
    if req.units == Units::Figure3 {
        return Err(Error::InvalidGrid(
            "figure3 units apply to gravity scans only".into(),
        ));
    }
    let lambda = require_lambda(req.units, req.lambda)?;
    let thetas = req.grid.points();
    let mut states = vec![
        ("dcs_product", StateParams::product()),
        ("dcs_psi_plus", StateParams::psi_plus()),
        ("dcs_psi_minus", StateParams::psi_minus()),
    ];
    if let Some(st) = req.state {
        states.push(("dcs_state", st));
    }
    states
        .into_iter()
        .map(|(label, st)| {
            let values = thetas
                .iter()
                .map(|&t| match req.units {
                    Units::Si => dcs_entangled_qed(t, &st, ctx, lambda.expect("checked")),
                    _ => Ok(qed_bracket(t, &st)),
                })
                .collect::<Result<Vec<_>>>()?;
            DcsCurve::new(
                thetas.clone(),
                values,
                req.units,
                CurveMetadata {
                    label: label.to_string(),
                    theory: Theory::Qed,
                    state: Some(st),
                    lambda,
                },
            )
        })
        .collect()
}

/// One row of a coincidence scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceRow {
    pub phase: f64,
    /// Separation in units of `lambda = hbar c / E`, equal to `phase / 2`.
    pub separation_over_lambda: f64,
    pub product: f64,
    pub psi_plus: f64,
    pub psi_minus: f64,
    pub state: Option<f64>,
}

pub fn run_coincidence_scan(
    phase_min: f64,
    phase_max: f64,
    samples: usize,
    state: Option<StateParams>,
) -> Result<Vec<CoincidenceRow>> {
    if !(phase_min.is_finite() && phase_max.is_finite() && phase_min < phase_max) {
        return Err(Error::InvalidGrid(format!(
            "need finite phase_min < phase_max, got [{phase_min}, {phase_max}]"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    linspace(phase_min, phase_max, samples)
        .into_iter()
        .map(|phase| {
            let f = |st: StateParams| -> Result<f64> {
                Ok(coincidence_factor(&CoincidenceQuery::new(phase, st)?))
            };
            Ok(CoincidenceRow {
                phase,
                separation_over_lambda: phase / 2.0,
                product: f(StateParams::product())?,
                psi_plus: f(StateParams::psi_plus())?,
                psi_minus: f(StateParams::psi_minus())?,
                state: state.map(f).transpose()?,
            })
        })
        .collect()
}

/// Where amplitude tables take their values from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmplitudeSource {
    ClosedForm,
    Diagrams,
}

pub fn amplitude_table(grid: &ThetaGrid, source: AmplitudeSource) -> Result<Vec<AmplitudeMatrix>> {
    let rules = FeynmanRules::default();
    grid.points()
        .into_iter()
        .map(|t| match source {
            AmplitudeSource::ClosedForm => closed_form_matrix(t),
            AmplitudeSource::Diagrams => rules.amplitude_matrix(t),
        })
        .collect()
}
