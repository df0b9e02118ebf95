//! Scenario documents: per-user piecewise priors in degrees plus run
//! settings.

use std::path::Path;

use beamalign::angular::{region, AngularPdf, Arc};
use beamalign::partition::{Regime, DEFAULT_GRID_POINTS};
use beamalign::simulate::{Scenario, User};
use serde::{Deserialize, Serialize};

use crate::brange::MAX_B;
use crate::error::{CliError, Result};
use crate::units::{check_deg, deg_to_rad};

pub const SCENARIO_SCHEMA_VERSION: u64 = 1;
pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 42;

/// Tolerance on each user's total mass.
const MASS_TOLERANCE: f64 = 1e-9;
/// Gaps narrower than this between listed pieces are rounding, not support.
const GAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub start_deg: f64,
    pub end_deg: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserSpec {
    pub pieces: Vec<PieceSpec>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u64,
    pub users: Vec<UserSpec>,
    pub b: usize,
    pub constraint: String,
    #[serde(
        default,
        deserialize_with = "count::deserialize",
        skip_serializing_if = "Option::is_none"
    )]
    pub grid_points: Option<u64>,
    #[serde(
        default,
        deserialize_with = "count::deserialize",
        skip_serializing_if = "Option::is_none"
    )]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Feedback slots per frame.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Frame length in slots.
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

/// Counts may be written as `100000` or `1e5`.
mod count {
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Num {
            Int(u64),
            Float(f64),
        }
        match Option::<Num>::deserialize(d)? {
            None => Ok(None),
            Some(Num::Int(n)) => Ok(Some(n)),
            Some(Num::Float(x)) if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 => Ok(Some(x as u64)),
            Some(Num::Float(x)) => Err(serde::de::Error::custom(format!(
                "expected a non-negative integer, found {x}"
            ))),
        }
    }
}

#[derive(Deserialize)]
struct Header {
    schema_version: Option<u64>,
}

/// A validated scenario with every default filled in.
#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub scenario: Scenario,
    pub grid_points: usize,
    pub samples: u64,
    pub seed: u64,
    pub file: ScenarioFile,
}

pub fn parse_scenario(path: &Path) -> Result<ResolvedScenario> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario_named(&text, &path.display().to_string())
}

pub fn parse_scenario_str(text: &str) -> Result<ResolvedScenario> {
    parse_scenario_named(text, "scenario")
}

fn parse_scenario_named(text: &str, name: &str) -> Result<ResolvedScenario> {
    let parse_err = |e: serde_json::Error| CliError::Parse {
        source_name: name.to_string(),
        message: e.to_string(),
    };
    let header: Header = serde_json::from_str(text).map_err(parse_err)?;
    match header.schema_version {
        Some(SCENARIO_SCHEMA_VERSION) => {}
        Some(found) => {
            return Err(CliError::SchemaVersion {
                source_name: name.to_string(),
                found,
                supported: SCENARIO_SCHEMA_VERSION,
            })
        }
        None => {
            return Err(CliError::Parse {
                source_name: name.to_string(),
                message: "missing field `schema_version`".into(),
            })
        }
    }
    let file: ScenarioFile = serde_json::from_str(text).map_err(parse_err)?;
    resolve(file)
}

pub fn resolve(file: ScenarioFile) -> Result<ResolvedScenario> {
    if file.users.is_empty() {
        return Err(CliError::invariant("users", "at least one user is required"));
    }
    if file.b == 0 || file.b > MAX_B {
        return Err(CliError::invariant(
            "b",
            format!("{} is outside 1..={MAX_B}", file.b),
        ));
    }
    let constraint: Regime = file
        .constraint
        .parse()
        .map_err(|e| CliError::invariant("constraint", e))?;
    let users = file
        .users
        .iter()
        .enumerate()
        .map(|(j, u)| {
            if !(u.weight.is_finite() && u.weight >= 0.0) {
                return Err(CliError::invariant(
                    format!("users[{j}].weight"),
                    format!("{} is not a non-negative number", u.weight),
                ));
            }
            Ok(User {
                pdf: user_pdf(j, &u.pieces)?,
                weight: u.weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let scenario = Scenario::new(users, file.b, constraint)
        .and_then(|s| s.with_frame(file.d, file.t))
        .map_err(|e| CliError::invariant("scenario", e))?;
    let grid_points = match file.grid_points {
        None => DEFAULT_GRID_POINTS,
        Some(g) => usize::try_from(g).map_err(|_| CliError::invariant("grid_points", "too large"))?,
    };
    Ok(ResolvedScenario {
        scenario,
        grid_points,
        samples: file.samples.unwrap_or(DEFAULT_SAMPLES),
        seed: file.seed.unwrap_or(DEFAULT_SEED),
        file,
    })
}

/// Arcs a piece covers; `start > end` wraps through 0 and `0..360` is the
/// whole circle.
fn piece_arcs(start: f64, end: f64) -> Vec<Arc> {
    let (s, e) = (deg_to_rad(start), deg_to_rad(end));
    let mut arcs = Vec::with_capacity(2);
    if s < e {
        arcs.extend(Arc::new(s, e));
    } else {
        arcs.extend(Arc::new(0.0, e));
        arcs.extend(Arc::new(s, beamalign::angular::TAU));
    }
    arcs
}

fn user_pdf(j: usize, pieces: &[PieceSpec]) -> Result<AngularPdf> {
    let field = |i: usize, f: &str| format!("users[{j}].pieces[{i}].{f}");
    if pieces.is_empty() {
        return Err(CliError::invariant(format!("users[{j}].pieces"), "no pieces"));
    }
    let mut arcs: Vec<(Arc, f64, usize)> = Vec::new();
    let mut total = 0.0;
    for (i, p) in pieces.iter().enumerate() {
        for (name, v) in [("start_deg", p.start_deg), ("end_deg", p.end_deg)] {
            if !check_deg(v) {
                return Err(CliError::invariant(
                    field(i, name),
                    format!("{v} is outside [0, 360]"),
                ));
            }
        }
        if p.start_deg == p.end_deg {
            return Err(CliError::invariant(field(i, "end_deg"), "piece has zero width"));
        }
        if !(p.mass.is_finite() && p.mass >= 0.0) {
            return Err(CliError::invariant(
                field(i, "mass"),
                format!("{} is not a non-negative number", p.mass),
            ));
        }
        let parts = piece_arcs(p.start_deg, p.end_deg);
        let width: f64 = parts.iter().map(Arc::width).sum();
        total += p.mass;
        arcs.extend(parts.into_iter().map(|a| (a, p.mass / width, i)));
    }
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(CliError::invariant(
            format!("users[{j}].pieces"),
            format!("masses sum to {total}, expected 1"),
        ));
    }
    arcs.sort_by(|a, b| a.0.start().total_cmp(&b.0.start()));
    for w in arcs.windows(2) {
        if w[0].0.end() > w[1].0.start() + GAP_TOLERANCE {
            return Err(CliError::invariant(
                format!("users[{j}].pieces"),
                format!("pieces[{}] and pieces[{}] overlap", w[0].2, w[1].2),
            ));
        }
    }
    let covered = region::canonicalize(arcs.iter().map(|a| a.0));
    let mut list: Vec<(Arc, f64)> = arcs.into_iter().map(|(a, d, _)| (a, d)).collect();
    list.extend(
        region::complement(&covered)
            .into_iter()
            .filter(|a| a.width() > GAP_TOLERANCE)
            .map(|a| (a, 0.0)),
    );
    AngularPdf::new(list).map_err(|e| CliError::invariant(format!("users[{j}].pieces"), e))
}
