//! CSV and JSON rendering of scan results.

use std::io::Write;

use anyhow::Result;
use gravgamma_core::kinematics::PolPattern;
use gravgamma_core::pqg::AmplitudeMatrix;
use gravgamma_core::scan::{CoincidenceRow, DcsCurve, DcsScan};
use gravgamma_core::verify::VerifyReport;

pub const DCS_HEADER: [&str; 5] = [
    "theta",
    "dcs_product",
    "dcs_psi_plus",
    "dcs_psi_minus",
    "dcs_averaged",
];

/// `x` with `digits` significant digits in positional notation.
pub fn fmt_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_value(x: f64) -> String {
    format!("{x:e}")
}

fn theta_cell(theta: f64) -> String {
    fmt_significant(theta, 9)
}

fn write_curves<W: Write>(out: W, header: &[&str], curves: &[&DcsCurve]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    let thetas = curves[0].thetas();
    for (k, &theta) in thetas.iter().enumerate() {
        let mut row = vec![theta_cell(theta)];
        row.extend(curves.iter().map(|c| fmt_value(c.values()[k])));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn dcs_csv<W: Write>(out: W, scan: &DcsScan) -> Result<()> {
    let mut header = DCS_HEADER.to_vec();
    if scan.state.is_some() {
        header.push("dcs_state");
    }
    write_curves(out, &header, &scan.curves())
}

pub fn qed_csv<W: Write>(out: W, curves: &[DcsCurve]) -> Result<()> {
    let mut header = vec!["theta"];
    header.extend(curves.iter().map(|c| c.metadata.label.as_str()));
    let refs: Vec<&DcsCurve> = curves.iter().collect();
    write_curves(out, &header, &refs)
}

pub fn amplitude_csv<W: Write>(out: W, table: &[AmplitudeMatrix]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["theta".to_string()];
    header.extend(PolPattern::all().map(|p| format!("m{p}")));
    w.write_record(&header)?;
    for m in table {
        let mut row = vec![theta_cell(m.theta)];
        row.extend(PolPattern::all().map(|p| fmt_value(m.get(p).re)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn coincidence_csv<W: Write>(out: W, rows: &[CoincidenceRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let with_state = rows.first().is_some_and(|r| r.state.is_some());
    let mut header = vec![
        "phase",
        "separation_over_lambda",
        "factor_product",
        "factor_psi_plus",
        "factor_psi_minus",
    ];
    if with_state {
        header.push("factor_state");
    }
    w.write_record(&header)?;
    for r in rows {
        let mut row = vec![
            fmt_significant(r.phase, 9),
            fmt_significant(r.separation_over_lambda, 9),
            fmt_value(r.product),
            fmt_value(r.psi_plus),
            fmt_value(r.psi_minus),
        ];
        if let Some(s) = r.state {
            row.push(fmt_value(s));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn verify_text<W: Write>(mut out: W, report: &VerifyReport) -> Result<()> {
    writeln!(
        out,
        "grid: {} angles in [{:.6}, {:.6}] rad",
        report.grid_points, report.theta_min, report.theta_max
    )?;
    writeln!(
        out,
        "global sign (closed form / diagram sum): {:+}",
        report.global_sign
    )?;
    if report.vertex_weights != [1.0; 5] {
        writeln!(out, "vertex weights: {:?}", report.vertex_weights)?;
    }
    writeln!(
        out,
        "amplitude tolerance: {:e}  gauge tolerance: {:e}",
        report.amplitude_tolerance, report.gauge_tolerance
    )?;
    writeln!(out, "pattern  expected    max_rel_dev  worst_theta  status")?;
    for p in &report.patterns {
        writeln!(
            out,
            "{}     {:<10}  {:<11.3e}  {:<11.6}  {}",
            p.pattern,
            if p.nonzero { "nonzero" } else { "zero" },
            p.max_relative_deviation,
            p.worst_theta,
            if p.pass { "ok" } else { "FAIL" }
        )?;
    }
    writeln!(
        out,
        "gauge shifts: {} checks, max relative deviation {:.3e}",
        report.gauge_checks, report.gauge_max_deviation
    )?;
    writeln!(
        out,
        "max imaginary part (relative): {:.3e}",
        report.max_imaginary
    )?;
    writeln!(out, "result: {}", if report.pass { "PASS" } else { "FAIL" })?;
    Ok(())
}

pub fn json<W: Write, T: serde::Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}
