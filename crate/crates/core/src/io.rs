//! File ingestion and export.
//!
//! JSON inputs: material catalogs (moduli in GPa, converted to MPa at
//! ingestion) and tube sets (precurvature as radius of curvature, `null`
//! for straight). CSV inputs are two-column with a mandatory header; blank
//! lines and `#` comments are ignored. Exports are CSV at full float
//! precision plus an SVG polyline (1 px = 1 mm) for visual inspection.

use std::fmt;

use serde::Deserialize;

use crate::curvefit::Point2;
use crate::design::{CandidateDesign, DesignConstraints};
use crate::mechanics::ShapeSample;
use crate::testdata::{FatigueLog, StressStrainCurve};
use crate::tube::{Material, Tube, TubeSet, DEFAULT_MIN_CLEARANCE};

// ── Errors ──────────────────────────────────────────────────────────────────

#[derive(Debug)]
pub enum FileError {
    Json(serde_json::Error),
    /// First data line of a CSV must be the expected header.
    MissingHeader { expected: &'static str, got: String },
    /// A CSV data row failed to parse.
    BadRow { line: usize, reason: String },
    /// A tube references a material absent from the catalog.
    UnknownMaterial { name: String },
    /// Parsed values violate a domain invariant.
    Validation(String),
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Json(e) => write!(f, "invalid JSON: {e}"),
            Self::MissingHeader { expected, got } => {
                write!(f, "expected CSV header '{expected}', got '{got}'")
            }
            Self::BadRow { line, reason } => write!(f, "line {line}: {reason}"),
            Self::UnknownMaterial { name } => {
                write!(f, "material '{name}' not found in the catalog")
            }
            Self::Validation(message) => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for FileError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<serde_json::Error> for FileError {
    fn from(e: serde_json::Error) -> Self {
        Self::Json(e)
    }
}

fn invalid(e: impl fmt::Display) -> FileError {
    FileError::Validation(e.to_string())
}

// ── Material catalog (JSON) ─────────────────────────────────────────────────

#[derive(Debug, Deserialize)]
struct MaterialEntry {
    name: String,
    youngs_modulus_gpa: f64,
    elastic_limit_strain: f64,
    break_strain: f64,
    #[serde(default)]
    notes: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MaterialCatalogFile {
    One(MaterialEntry),
    Many(Vec<MaterialEntry>),
}

/// Parse a material catalog: either a single material object or an array.
/// Moduli are given in GPa and stored in MPa.
pub fn parse_material_catalog(json: &str) -> Result<Vec<Material>, FileError> {
    let entries = match serde_json::from_str::<MaterialCatalogFile>(json)? {
        MaterialCatalogFile::One(entry) => vec![entry],
        MaterialCatalogFile::Many(entries) => entries,
    };
    entries
        .into_iter()
        .map(|entry| {
            let mut material = Material::new(
                entry.name,
                entry.youngs_modulus_gpa * 1000.0,
                entry.elastic_limit_strain,
                entry.break_strain,
            )
            .map_err(invalid)?;
            material.notes = entry.notes.unwrap_or_default();
            Ok(material)
        })
        .collect()
}

// ── Tube sets (JSON) ────────────────────────────────────────────────────────

#[derive(Debug, Deserialize)]
struct TubeEntry {
    od_mm: f64,
    wall_mm: f64,
    /// Radius of curvature of the curved section; `null` or absent means
    /// straight. Negative radii bend the other way.
    #[serde(default)]
    precurvature_radius_mm: Option<f64>,
    curved_len_mm: f64,
    straight_len_mm: f64,
    material: String,
}

#[derive(Debug, Deserialize)]
struct TubeSetFile {
    #[serde(default = "default_clearance")]
    clearance_mm: f64,
    tubes: Vec<TubeEntry>,
}

fn default_clearance() -> f64 {
    DEFAULT_MIN_CLEARANCE
}

/// A tube set together with the clearance requirement configured in its file.
#[derive(Debug, Clone)]
pub struct LoadedTubeSet {
    pub set: TubeSet,
    pub clearance: f64,
}

/// Parse a tube-set file, resolving material references against `catalog`.
/// Nesting is not checked here; callers decide when to enforce it.
pub fn parse_tube_set(json: &str, catalog: &[Material]) -> Result<LoadedTubeSet, FileError> {
    let file: TubeSetFile = serde_json::from_str(json)?;
    let tubes = file
        .tubes
        .into_iter()
        .map(|entry| {
            let material = catalog
                .iter()
                .find(|m| m.name == entry.material)
                .cloned()
                .ok_or(FileError::UnknownMaterial {
                    name: entry.material,
                })?;
            let precurvature = match entry.precurvature_radius_mm {
                None => 0.0,
                Some(radius) if radius != 0.0 => 1.0 / radius,
                Some(_) => {
                    return Err(FileError::Validation(
                        "precurvature_radius_mm must be non-zero; use null for straight"
                            .to_string(),
                    ))
                }
            };
            Tube::new(
                entry.od_mm,
                entry.wall_mm,
                precurvature,
                entry.curved_len_mm,
                entry.straight_len_mm,
                material,
            )
            .map_err(invalid)
        })
        .collect::<Result<Vec<Tube>, FileError>>()?;
    Ok(LoadedTubeSet {
        set: TubeSet::new(tubes).map_err(invalid)?,
        clearance: file.clearance_mm,
    })
}

// ── Design constraints (JSON) ───────────────────────────────────────────────

#[derive(Debug, Deserialize)]
struct ConstraintsFile {
    od_min_mm: Option<f64>,
    od_max_mm: Option<f64>,
    wall_min_mm: Option<f64>,
    min_clearance_mm: Option<f64>,
    max_recoverable_strain: Option<f64>,
    radius_min_mm: Option<f64>,
    radius_max_mm: Option<f64>,
    curved_len_mm: Option<f64>,
}

/// Parse a design-constraints file; absent fields keep the defaults of the
/// demonstrated printable envelope.
pub fn parse_design_constraints(json: &str) -> Result<DesignConstraints, FileError> {
    let file: ConstraintsFile = serde_json::from_str(json)?;
    let defaults = DesignConstraints::default();
    let constraints = DesignConstraints {
        od_min: file.od_min_mm.unwrap_or(defaults.od_min),
        od_max: file.od_max_mm.unwrap_or(defaults.od_max),
        wall_min: file.wall_min_mm.unwrap_or(defaults.wall_min),
        min_clearance: file.min_clearance_mm.unwrap_or(defaults.min_clearance),
        max_recoverable_strain: file
            .max_recoverable_strain
            .unwrap_or(defaults.max_recoverable_strain),
        radius_min: file.radius_min_mm.unwrap_or(defaults.radius_min),
        radius_max: file.radius_max_mm.unwrap_or(defaults.radius_max),
        curved_len: file.curved_len_mm.unwrap_or(defaults.curved_len),
    };
    constraints.validate().map_err(invalid)?;
    Ok(constraints)
}

// ── Two-column CSV inputs ───────────────────────────────────────────────────

/// Data lines of a CSV: comments and blank lines stripped, header checked.
fn csv_rows(text: &str, expected_header: &'static str) -> Result<Vec<(usize, f64, f64)>, FileError> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            let normalized: String = line.split(',').map(str::trim).collect::<Vec<_>>().join(",");
            if !normalized.eq_ignore_ascii_case(expected_header) {
                return Err(FileError::MissingHeader {
                    expected: expected_header,
                    got: line.to_string(),
                });
            }
            header_seen = true;
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let parse = |field: Option<&str>| -> Result<f64, FileError> {
            field
                .filter(|s| !s.is_empty())
                .ok_or(FileError::BadRow {
                    line: i + 1,
                    reason: "expected two comma-separated values".to_string(),
                })?
                .parse::<f64>()
                .map_err(|e| FileError::BadRow {
                    line: i + 1,
                    reason: e.to_string(),
                })
        };
        let a = parse(fields.next())?;
        let b = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(FileError::BadRow {
                line: i + 1,
                reason: "expected exactly two columns".to_string(),
            });
        }
        rows.push((i + 1, a, b));
    }
    if !header_seen {
        return Err(FileError::MissingHeader {
            expected: expected_header,
            got: String::new(),
        });
    }
    Ok(rows)
}

/// Digitized centerline points: header `x_mm,y_mm`.
pub fn parse_points_csv(text: &str) -> Result<Vec<Point2>, FileError> {
    Ok(csv_rows(text, "x_mm,y_mm")?
        .into_iter()
        .map(|(_, x, y)| Point2::new(x, y))
        .collect())
}

/// Tensile record: header `strain,stress_mpa`.
pub fn parse_tensile_csv(text: &str) -> Result<StressStrainCurve, FileError> {
    let samples = csv_rows(text, "strain,stress_mpa")?
        .into_iter()
        .map(|(_, strain, stress)| (strain, stress))
        .collect();
    StressStrainCurve::new(samples).map_err(invalid)
}

/// Fatigue record: header `cycle,radius_mm`, radius converted to curvature.
/// Zero or negative radii are rejected.
pub fn parse_fatigue_csv(text: &str) -> Result<FatigueLog, FileError> {
    let records = csv_rows(text, "cycle,radius_mm")?
        .into_iter()
        .map(|(line, cycle, radius)| {
            if cycle < 0.0 || cycle.fract() != 0.0 || cycle > u32::MAX as f64 {
                return Err(FileError::BadRow {
                    line,
                    reason: format!("cycle must be a non-negative integer, got {cycle}"),
                });
            }
            if !(radius > 0.0) {
                return Err(FileError::BadRow {
                    line,
                    reason: format!("radius_mm must be > 0, got {radius}"),
                });
            }
            Ok((cycle as u32, 1.0 / radius))
        })
        .collect::<Result<Vec<_>, FileError>>()?;
    FatigueLog::new(records).map_err(invalid)
}

// ── Exports ─────────────────────────────────────────────────────────────────

/// Sampled centerline as CSV: `s_mm,x_mm,y_mm,kappa_per_mm`.
pub fn shape_samples_csv(samples: &[ShapeSample]) -> String {
    let mut out = String::from("s_mm,x_mm,y_mm,kappa_per_mm\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{}\n",
            s.arclength, s.position.x, s.position.y, s.curvature
        ));
    }
    out
}

/// Centerline as an SVG polyline with a 1 px = 1 mm viewport, y up.
pub fn shape_svg(points: &[Point2]) -> String {
    let pad = 5.0;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in points {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(-p.y);
        max_y = max_y.max(-p.y);
    }
    let (width, height) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let polyline: Vec<String> = points
        .iter()
        .map(|p| format!("{:.3},{:.3}", p.x, -p.y))
        .collect();
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" ",
            "viewBox=\"{x0:.3} {y0:.3} {w:.3} {h:.3}\">\n",
            "  <polyline points=\"{pts}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n",
            "</svg>\n"
        ),
        w = width,
        h = height,
        x0 = min_x - pad,
        y0 = min_y - pad,
        pts = polyline.join(" ")
    )
}

/// Ranked design candidates as CSV:
/// `outer_od,outer_wall,outer_R,inner_od,inner_wall,inner_R,pred_R,score`.
/// Straight tubes and straight predictions print as `inf`.
pub fn design_results_csv(candidates: &[CandidateDesign]) -> String {
    let mut out = String::from("outer_od,outer_wall,outer_R,inner_od,inner_wall,inner_R,pred_R,score\n");
    for c in candidates {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.outer.od,
            c.outer.wall,
            c.outer.precurvature_radius().unwrap_or(f64::INFINITY),
            c.inner.od,
            c.inner.wall,
            c.inner.precurvature_radius().unwrap_or(f64::INFINITY),
            c.predicted_equilibrium_radius,
            c.score
        ));
    }
    out
}
