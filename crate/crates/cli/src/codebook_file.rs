//! Codebook documents: beams as lists of arcs in degrees.

use std::path::Path;

use beamalign::angular::Arc;
use beamalign::partition::Regime;
use beamalign::synthesis::{Beam, Codebook};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{CliError, Result};
use crate::units::{check_deg, deg_to_rad, fmt_deg, ANGLE_DECIMALS};

pub const CODEBOOK_SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSpec {
    #[serde(serialize_with = "fixed_decimals")]
    pub start_deg: f64,
    #[serde(serialize_with = "fixed_decimals")]
    pub end_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodebookFile {
    pub schema_version: u64,
    pub b: usize,
    pub constraint: String,
    pub beams: Vec<Vec<ArcSpec>>,
}

fn fixed_decimals<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let raw =
        RawValue::from_string(format!("{:.*}", ANGLE_DECIMALS, v)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

impl CodebookFile {
    pub fn from_codebook(codebook: &Codebook) -> Self {
        let beams = codebook
            .beams()
            .iter()
            .map(|b| {
                b.arcs()
                    .iter()
                    .map(|a| ArcSpec {
                        start_deg: fmt_deg(a.start()).parse().expect("formatted float"),
                        end_deg: fmt_deg(a.end()).parse().expect("formatted float"),
                    })
                    .collect()
            })
            .collect();
        CodebookFile {
            schema_version: CODEBOOK_SCHEMA_VERSION,
            b: codebook.len(),
            constraint: codebook.constraint().name().to_string(),
            beams,
        }
    }

    pub fn to_codebook(&self) -> Result<Codebook> {
        if self.beams.len() != self.b {
            return Err(CliError::invariant(
                "codebook.b",
                format!("b = {} but {} beams are listed", self.b, self.beams.len()),
            ));
        }
        let constraint: Regime = self
            .constraint
            .parse()
            .map_err(|e| CliError::invariant("codebook.constraint", e))?;
        let beams = self
            .beams
            .iter()
            .enumerate()
            .map(|(i, arcs)| {
                let arcs = arcs
                    .iter()
                    .enumerate()
                    .map(|(k, a)| {
                        arc_from_spec(a).map_err(|m| CliError::invariant(format!("beams[{i}][{k}]"), m))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Beam::new(arcs.into_iter().flatten())
                    .map_err(|e| CliError::invariant(format!("beams[{i}]"), e))
            })
            .collect::<Result<Vec<_>>>()?;
        Codebook::new(beams, constraint).map_err(|e| CliError::invariant("codebook", e))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

/// `start > end` wraps through 0.
fn arc_from_spec(a: &ArcSpec) -> std::result::Result<Vec<Arc>, String> {
    for v in [a.start_deg, a.end_deg] {
        if !check_deg(v) {
            return Err(format!("{v} is outside [0, 360]"));
        }
    }
    if a.start_deg == a.end_deg {
        return Err("arc has zero width".into());
    }
    let (s, e) = (deg_to_rad(a.start_deg), deg_to_rad(a.end_deg));
    let full = beamalign::angular::TAU;
    let arcs = if s < e {
        vec![Arc::new(s, e)]
    } else {
        vec![Arc::new(0.0, e), Arc::new(s, full)]
    };
    Ok(arcs.into_iter().filter_map(|r| r.ok()).collect())
}

/// Round-trips a codebook through its file form, so evaluation sees
/// exactly the beams a later reader will.
pub fn quantize(codebook: &Codebook) -> Result<Codebook> {
    CodebookFile::from_codebook(codebook).to_codebook()
}

pub fn parse_codebook_str(text: &str) -> Result<Codebook> {
    parse_codebook_named(text, "codebook")
}

pub fn read_codebook(path: &Path) -> Result<Codebook> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_codebook_named(&text, &path.display().to_string())
}

fn parse_codebook_named(text: &str, name: &str) -> Result<Codebook> {
    #[derive(Deserialize)]
    struct Header {
        schema_version: Option<u64>,
    }
    let parse_err = |e: serde_json::Error| CliError::Parse {
        source_name: name.to_string(),
        message: e.to_string(),
    };
    let header: Header = serde_json::from_str(text).map_err(parse_err)?;
    match header.schema_version {
        Some(CODEBOOK_SCHEMA_VERSION) => {}
        Some(found) => {
            return Err(CliError::SchemaVersion {
                source_name: name.to_string(),
                found,
                supported: CODEBOOK_SCHEMA_VERSION,
            })
        }
        None => {
            return Err(CliError::Parse {
                source_name: name.to_string(),
                message: "missing field `schema_version`".into(),
            })
        }
    }
    let file: CodebookFile = serde_json::from_str(text).map_err(parse_err)?;
    file.to_codebook()
}

pub fn write_codebook(path: &Path, codebook: &Codebook) -> Result<()> {
    std::fs::write(path, CodebookFile::from_codebook(codebook).to_json()).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::exit;
    use beamalign::synthesis::{halving_codebook, uniform_contiguous_codebook};

    #[test]
    fn angles_have_six_decimals() {
        let json = CodebookFile::from_codebook(&halving_codebook(3).unwrap()).to_json();
        assert!(json.contains("\"start_deg\": 45.000000"), "{json}");
        assert!(json.contains("\"end_deg\": 180.000000"), "{json}");
    }

    #[test]
    fn round_trip_within_micro_radian() {
        for b in 1..=6 {
            for cb in [
                halving_codebook(b).unwrap(),
                uniform_contiguous_codebook(b).unwrap(),
            ] {
                let back = parse_codebook_str(&CodebookFile::from_codebook(&cb).to_json()).unwrap();
                assert_eq!(back.len(), cb.len());
                assert_eq!(back.constraint(), cb.constraint());
                for (x, y) in back.beams().iter().zip(cb.beams()) {
                    assert_eq!(x.arcs().len(), y.arcs().len());
                    for (p, q) in x.arcs().iter().zip(y.arcs()) {
                        assert!((p.start() - q.start()).abs() < 1e-6 && (p.end() - q.end()).abs() < 1e-6);
                    }
                }
                assert_eq!(quantize(&back).unwrap(), back);
            }
        }
    }

    #[test]
    fn wrapping_arc_spec() {
        let text = r#"{"schema_version": 1, "b": 1, "constraint": "contiguous", "beams": [[{"start_deg": 270, "end_deg": 90}]]}"#;
        let cb = parse_codebook_str(text).unwrap();
        assert!(cb.beams()[0].wraps());
        assert!((cb.beams()[0].width() - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn invalid_documents() {
        let bad_count = r#"{"schema_version": 1, "b": 2, "constraint": "contiguous", "beams": [[{"start_deg": 0, "end_deg": 90}]]}"#;
        assert_eq!(
            parse_codebook_str(bad_count).unwrap_err().exit_code(),
            exit::INVARIANT
        );
        let split = r#"{"schema_version": 1, "b": 1, "constraint": "contiguous", "beams": [[{"start_deg": 0, "end_deg": 90}, {"start_deg": 180, "end_deg": 270}]]}"#;
        assert_eq!(
            parse_codebook_str(split).unwrap_err().exit_code(),
            exit::INVARIANT
        );
        assert!(parse_codebook_str(&split.replace("\"contiguous\"", "\"unconstrained\"")).is_ok());
        assert_eq!(parse_codebook_str("[1,").unwrap_err().exit_code(), exit::PARSE);
        assert_eq!(
            parse_codebook_str(r#"{"schema_version": 2}"#)
                .unwrap_err()
                .exit_code(),
            exit::PARSE
        );
    }
}
