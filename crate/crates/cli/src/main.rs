//! `gravgamma`: scans, amplitude tables and verification for graviton-mediated
//! photon-photon scattering.
//!
//! All angles are in radians. Exit status: 0 on success, 1 when `verify`
//! fails, 2 on usage errors, 3 on I/O errors.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gravgamma_core::constants::PhysicalConstants;
use gravgamma_core::cross_sections::{
    decimal_exponent, pqg_prefactor, qed_max_dcs, StateParams, Theory,
};
use gravgamma_core::pqg::VertexFactor;
use gravgamma_core::qed::QedContext;
use gravgamma_core::scan::{
    amplitude_table, run_coincidence_scan, run_dcs_scan, run_qed_scan, AmplitudeSource,
    DcsScanRequest, ThetaGrid, Units, DEFAULT_THETA_MAX, DEFAULT_THETA_MIN,
};
use gravgamma_core::verify::{run_verify, VerifyConfig};
use serde::Serialize;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gravgamma",
    version,
    about = "Tree-level gravitational photon-photon scattering: amplitudes, entangled-state cross sections, verification",
    after_help = "Angles are in radians. lambda is the reduced wavelength hbar*c/E in meters."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Amplitude matrix elements (reduced units) over a theta grid.
    AmpTable {
        #[command(flatten)]
        grid: GridArgs,
        /// Evaluate the closed forms or the summed Feynman diagrams.
        #[arg(long, value_enum, default_value_t = SourceArg::Closed)]
        source: SourceArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gravitational cross sections for product, Bell and averaged states.
    DcsScan {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        units: UnitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the diagram sum against the closed-form amplitudes.
    Verify {
        /// Relative tolerance for diagram sum vs closed form.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Relative tolerance for gauge-shift invariance.
        #[arg(long, default_value_t = 1e-9)]
        gauge_tolerance: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Scale one vertex summand by (1 + delta); negative control.
        #[arg(long, hide = true)]
        perturb_vertex: Option<f64>,
        /// Which vertex summand (0-4) --perturb-vertex applies to.
        #[arg(long, hide = true, default_value_t = 0)]
        perturb_term: usize,
    },
    /// Low-energy QED cross sections for the same state family.
    QedScan {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        units: UnitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Delayed-coincidence factor versus the detector phase.
    CoincidenceScan {
        /// Smallest phase 2 p.(x' - x)/hbar, radians.
        #[arg(long, default_value_t = 0.0)]
        phase_min: f64,
        #[arg(long, default_value_t = 2.0 * std::f64::consts::PI)]
        phase_max: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Order-of-magnitude summary in SI units.
    Si {
        /// Reduced wavelength hbar*c/E in meters.
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = TheoryArg::Pqg)]
        theory: TheoryArg,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = DEFAULT_THETA_MIN)]
    theta_min: f64,
    #[arg(long, default_value_t = DEFAULT_THETA_MAX)]
    theta_max: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<ThetaGrid, Failure> {
        ThetaGrid::new(self.theta_min, self.theta_max, self.samples).map_err(Failure::usage)
    }
}

#[derive(Args)]
struct StateArgs {
    /// Entanglement angle phi in [0, pi/2] of cos(phi)|12> + e^{i rho} sin(phi)|21>.
    #[arg(long)]
    phi: Option<f64>,
    /// Relative phase rho in [-pi/2, 3pi/2).
    #[arg(long)]
    rho: Option<f64>,
}

impl StateArgs {
    fn state(&self) -> Result<Option<StateParams>, Failure> {
        if self.phi.is_none() && self.rho.is_none() {
            return Ok(None);
        }
        StateParams::new(self.phi.unwrap_or(0.0), self.rho.unwrap_or(0.0))
            .map(Some)
            .map_err(Failure::usage)
    }
}

#[derive(Args)]
struct UnitArgs {
    #[arg(long, value_enum, default_value_t = UnitArg::Reduced)]
    units: UnitArg,
    /// Reduced wavelength hbar*c/E in meters (required for si units).
    #[arg(long)]
    lambda: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    Reduced,
    Si,
    Figure3,
}

impl From<UnitArg> for Units {
    fn from(u: UnitArg) -> Units {
        match u {
            UnitArg::Reduced => Units::Reduced,
            UnitArg::Si => Units::Si,
            UnitArg::Figure3 => Units::Figure3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Closed,
    Diagrams,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Pqg,
    Qed,
}

enum Failure {
    Usage(String),
    Io(anyhow::Error),
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

fn sink(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut w: Box<dyn Write>) -> anyhow::Result<()> {
    w.flush().context("flushing output")?;
    Ok(())
}

#[derive(Serialize)]
struct SiSummary {
    theory: Theory,
    lambda: f64,
    /// `32 l_P^4/lambda^2` for gravity, the maximum over theta for QED.
    value: f64,
    exponent: i32,
    state: Option<StateParams>,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::AmpTable { grid, source, out } => {
            let source = match source {
                SourceArg::Closed => AmplitudeSource::ClosedForm,
                SourceArg::Diagrams => AmplitudeSource::Diagrams,
            };
            let table = amplitude_table(&grid.grid()?, source).map_err(Failure::usage)?;
            let mut w = sink(out.output.as_ref())?;
            match out.format {
                DataFormat::Csv => output::amplitude_csv(&mut w, &table)?,
                DataFormat::Json => output::json(&mut w, &table)?,
            }
            finish(w)?;
        }
        Command::DcsScan {
            grid,
            state,
            units,
            out,
        } => {
            let req = DcsScanRequest {
                grid: grid.grid()?,
                units: units.units.into(),
                lambda: units.lambda,
                state: state.state()?,
            };
            let scan = run_dcs_scan(&req).map_err(Failure::usage)?;
            let mut w = sink(out.output.as_ref())?;
            match out.format {
                DataFormat::Csv => output::dcs_csv(&mut w, &scan)?,
                DataFormat::Json => output::json(&mut w, &scan)?,
            }
            finish(w)?;
        }
        Command::Verify {
            tolerance,
            gauge_tolerance,
            format,
            output,
            perturb_vertex,
            perturb_term,
        } => {
            if perturb_term > 4 {
                return Err(Failure::Usage(format!(
                    "--perturb-term must be 0-4, got {perturb_term}"
                )));
            }
            let vertex = perturb_vertex
                .map(|d| VertexFactor::perturbed(perturb_term, d))
                .unwrap_or_default();
            let config = VerifyConfig {
                amplitude_tolerance: tolerance,
                gauge_tolerance,
                ..VerifyConfig::default()
            };
            let report = run_verify(&config, vertex).map_err(Failure::usage)?;
            let mut w = sink(output.as_ref())?;
            match format {
                ReportFormat::Text => output::verify_text(&mut w, &report)?,
                ReportFormat::Json => output::json(&mut w, &report)?,
            }
            finish(w)?;
            if !report.pass {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::QedScan {
            grid,
            state,
            units,
            out,
        } => {
            let req = DcsScanRequest {
                grid: grid.grid()?,
                units: units.units.into(),
                lambda: units.lambda,
                state: state.state()?,
            };
            let curves = run_qed_scan(&req, &QedContext::default()).map_err(Failure::usage)?;
            let mut w = sink(out.output.as_ref())?;
            match out.format {
                DataFormat::Csv => output::qed_csv(&mut w, &curves)?,
                DataFormat::Json => output::json(&mut w, &curves)?,
            }
            finish(w)?;
        }
        Command::CoincidenceScan {
            phase_min,
            phase_max,
            samples,
            state,
            out,
        } => {
            let rows = run_coincidence_scan(phase_min, phase_max, samples, state.state()?)
                .map_err(Failure::usage)?;
            let mut w = sink(out.output.as_ref())?;
            match out.format {
                DataFormat::Csv => output::coincidence_csv(&mut w, &rows)?,
                DataFormat::Json => output::json(&mut w, &rows)?,
            }
            finish(w)?;
        }
        Command::Si {
            lambda,
            theory,
            state,
            format,
        } => {
            let state = state.state()?;
            let (theory, value) = match theory {
                TheoryArg::Pqg => (
                    Theory::Pqg,
                    pqg_prefactor(lambda, &PhysicalConstants::default()),
                ),
                TheoryArg::Qed => (
                    Theory::Qed,
                    qed_max_dcs(
                        &state.unwrap_or_else(StateParams::product),
                        &QedContext::default(),
                        lambda,
                    ),
                ),
            };
            let value = value.map_err(Failure::usage)?;
            let summary = SiSummary {
                theory,
                lambda,
                value,
                exponent: decimal_exponent(value),
                state,
            };
            let mut w = sink(None)?;
            match format {
                ReportFormat::Json => output::json(&mut w, &summary)?,
                ReportFormat::Text => {
                    let what = match theory {
                        Theory::Pqg => "prefactor 32 l_P^4/lambda^2",
                        Theory::Qed => "maximum dsigma/dOmega over theta",
                    };
                    writeln!(w, "theory: {theory:?}").map_err(anyhow::Error::from)?;
                    writeln!(w, "lambda: {lambda:e} m").map_err(anyhow::Error::from)?;
                    writeln!(w, "{what}: {value:.4e} m^2/sr").map_err(anyhow::Error::from)?;
                    writeln!(w, "exponent: {}", summary.exponent).map_err(anyhow::Error::from)?;
                }
            }
            finish(w)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_IO)
        }
    }
}
