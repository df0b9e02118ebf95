//! CSV tables and listings.

use std::io::Write;
use std::path::Path;

use beamalign::angular::{AngularPdf, Arc};
use beamalign::partition::{BoundsReport, Regime};
use beamalign::simulate::EvaluationReport;
use beamalign::synthesis::{Codebook, FeedbackSignature};

use crate::error::{CliError, Result};
use crate::units::fmt_deg;

pub const RESULT_COLUMNS: [&str; 8] = [
    "scheme",
    "b",
    "analytic_u",
    "empirical_u",
    "se",
    "lower",
    "upper",
    "gain_vs_es",
];
pub const SWEEP_COLUMNS: [&str; 6] = ["b", "scheme", "u", "lower", "upper", "gain_vs_es"];

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn arcs_field(arcs: &[Arc]) -> String {
    arcs.iter()
        .map(|a| format!("{}:{}", fmt_deg(a.start()), fmt_deg(a.end())))
        .collect::<Vec<_>>()
        .join(";")
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_results<W: Write>(w: W, reports: &[EvaluationReport], path: &Path) -> Result<()> {
    let err = csv_err(path);
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(RESULT_COLUMNS).map_err(&err)?;
    for r in reports {
        let emp = r.empirical.as_ref();
        wtr.write_record([
            r.scheme.clone(),
            r.b.to_string(),
            r.analytic.to_string(),
            opt(emp.map(|e| e.mean)),
            opt(emp.and_then(|e| e.std_error)),
            r.bounds.lower.to_string(),
            r.bounds.upper.to_string(),
            r.gain_vs_es.to_string(),
        ])
        .map_err(&err)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_sweep<W: Write>(w: W, reports: &[EvaluationReport], path: &Path) -> Result<()> {
    let err = csv_err(path);
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(SWEEP_COLUMNS).map_err(&err)?;
    for r in reports {
        wtr.write_record([
            r.b.to_string(),
            r.scheme.clone(),
            r.analytic.to_string(),
            r.bounds.lower.to_string(),
            r.bounds.upper.to_string(),
            r.gain_vs_es.to_string(),
        ])
        .map_err(&err)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}

/// One row per beam: index, arcs as `start:end` degree pairs, width.
pub fn write_beams<W: Write>(w: W, codebook: &Codebook, path: &Path) -> Result<()> {
    let err = csv_err(path);
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["beam", "arcs_deg", "width_deg"])
        .map_err(&err)?;
    for (i, b) in codebook.beams().iter().enumerate() {
        wtr.write_record([i.to_string(), arcs_field(b.arcs()), fmt_deg(b.width())])
            .map_err(&err)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}

/// One row per uncertainty region with its signature and mixture mass.
pub fn write_cells<W: Write>(w: W, codebook: &Codebook, mixture: &AngularPdf, path: &Path) -> Result<()> {
    let err = csv_err(path);
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["cell_id", "signature", "arcs_deg", "width_deg", "mass"])
        .map_err(&err)?;
    for c in codebook.induced_partition().cells() {
        let mass = mixture
            .integrate(&c.region)
            .map_err(|e| CliError::invariant("cell", e))?;
        wtr.write_record([
            c.id.to_string(),
            FeedbackSignature::from_key(c.id, codebook.len()).to_string(),
            arcs_field(&c.region),
            fmt_deg(c.width()),
            mass.to_string(),
        ])
        .map_err(&err)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_bounds<W: Write>(w: W, rows: &[(usize, BoundsReport)], path: &Path) -> Result<()> {
    let err = csv_err(path);
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["b", "regime", "entropy_bits", "lower", "upper"])
        .map_err(&err)?;
    for (b, r) in rows {
        wtr.write_record([
            b.to_string(),
            r.regime.name().to_string(),
            r.entropy_bits.to_string(),
            r.lower.to_string(),
            r.upper.to_string(),
        ])
        .map_err(&err)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}

/// Runs `f` against a buffered file at `path`.
pub fn to_file<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut std::io::BufWriter<std::fs::File>) -> Result<()>,
{
    let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    f(&mut w)?;
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn regimes_for(constraint: Regime) -> [Regime; 2] {
    match constraint {
        Regime::Unconstrained => [Regime::Unconstrained, Regime::Contiguous],
        Regime::Contiguous => [Regime::Contiguous, Regime::Unconstrained],
    }
}
