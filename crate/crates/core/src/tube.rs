//! Tube, material, and nested tube-set types.
//!
//! Everything downstream (equilibrium mechanics, fatigue reduction, design
//! search) consumes the annular-beam geometry defined here. Units are fixed
//! to millimetres and megapascals throughout, so bending stiffness comes out
//! in N·mm² with no conversion factors.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Default minimum diametral clearance between nested tubes [mm].
///
/// Matches the gap between the tube pairs demonstrated in practice
/// (outer ID 2.6 over inner OD 2.2, outer ID 4.2 over inner OD 3.8).
pub const DEFAULT_MIN_CLEARANCE: f64 = 0.4;

/// Absolute tolerance for dimension comparisons [mm].
///
/// Derived quantities like `od − 2·wall − inner_od` carry a few ulps of
/// rounding; a picometre of slack keeps threshold checks from flipping on
/// noise six orders of magnitude below any print tolerance.
pub const DIM_TOLERANCE: f64 = 1e-9;

// ── Errors ──────────────────────────────────────────────────────────────────

/// Validation failures for tubes, materials, and tube sets.
#[derive(Debug, Clone, PartialEq)]
pub enum TubeError {
    /// Young's modulus must be strictly positive.
    NonPositiveModulus { youngs_modulus: f64 },
    /// Strain limits must satisfy 0 < elastic limit < break strain < 1.
    InvalidStrainLimits { elastic_limit: f64, break_strain: f64 },
    /// Outer diameter must be strictly positive.
    NonPositiveOd { od: f64 },
    /// Wall thickness must satisfy 0 < wall <= od/2.
    InvalidWall { od: f64, wall: f64 },
    /// Section lengths must be non-negative.
    NegativeLength { name: &'static str, value: f64 },
    /// The precurved arc radius must exceed the tube's own outer radius.
    PrecurvatureTooTight { od: f64, precurvature: f64 },
    /// A tube set must contain at least one tube.
    EmptyTubeSet,
}

impl fmt::Display for TubeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveModulus { youngs_modulus } => {
                write!(f, "Young's modulus must be > 0, got {youngs_modulus} MPa")
            }
            Self::InvalidStrainLimits {
                elastic_limit,
                break_strain,
            } => write!(
                f,
                "strain limits must satisfy 0 < elastic limit < break strain < 1, \
                 got elastic limit {elastic_limit}, break strain {break_strain}"
            ),
            Self::NonPositiveOd { od } => write!(f, "outer diameter must be > 0, got {od} mm"),
            Self::InvalidWall { od, wall } => write!(
                f,
                "wall must satisfy 0 < wall <= od/2, got wall {wall} mm for od {od} mm"
            ),
            Self::NegativeLength { name, value } => {
                write!(f, "{name} must be >= 0, got {value} mm")
            }
            Self::PrecurvatureTooTight { od, precurvature } => write!(
                f,
                "precurvature {precurvature} 1/mm bends tighter than the tube radius {} mm allows",
                od / 2.0
            ),
            Self::EmptyTubeSet => write!(f, "empty tube set"),
        }
    }
}

impl std::error::Error for TubeError {}

// ── Material ────────────────────────────────────────────────────────────────

/// Linear-elastic material model for a printed tube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    /// Identifier used by catalog files and tube references.
    pub name: String,
    /// Young's modulus [MPa].
    pub youngs_modulus: f64,
    /// Strain up to which loading is assumed fully recoverable.
    pub elastic_limit_strain: f64,
    /// Strain at specimen breakage.
    pub break_strain: f64,
    /// Free-text provenance notes.
    pub notes: String,
}

impl Material {
    pub fn new(
        name: impl Into<String>,
        youngs_modulus: f64,
        elastic_limit_strain: f64,
        break_strain: f64,
    ) -> Result<Self, TubeError> {
        if !(youngs_modulus > 0.0) {
            return Err(TubeError::NonPositiveModulus { youngs_modulus });
        }
        if !(0.0 < elastic_limit_strain && elastic_limit_strain < break_strain && break_strain < 1.0)
        {
            return Err(TubeError::InvalidStrainLimits {
                elastic_limit: elastic_limit_strain,
                break_strain,
            });
        }
        Ok(Self {
            name: name.into(),
            youngs_modulus,
            elastic_limit_strain,
            break_strain,
            notes: String::new(),
        })
    }

    /// MJF-printed Nylon-12 with tensile-test parameters: E = 1.51 GPa,
    /// linear up to ~2% strain, breakage at 17.7% strain.
    pub fn nylon12_mjf() -> Self {
        let mut m = Self::new("nylon12-mjf", 1510.0, 0.02, 0.177)
            .expect("built-in material parameters are valid");
        m.notes = "MJF-printed Nylon-12, tensile-tested per ASTM D638".to_string();
        m
    }
}

// ── Tube ────────────────────────────────────────────────────────────────────

/// An annular precurved beam: a straight proximal section followed by a
/// distal section of constant precurvature.
///
/// Curvature is the canonical field; radius of curvature is a presentation
/// conversion (`1/k`), which keeps straight tubes (`k = 0`) representable.
/// Positive curvature bends toward +y in the tube's bending plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Tube {
    /// Outer diameter [mm].
    pub od: f64,
    /// Wall thickness [mm]; `wall == od/2` degenerates to a solid rod.
    pub wall: f64,
    /// Signed precurvature of the curved section [1/mm]; 0 encodes straight.
    pub precurvature: f64,
    /// Length of the distal curved section [mm].
    pub curved_len: f64,
    /// Length of the proximal straight section [mm].
    pub straight_len: f64,
    pub material: Material,
}

impl Tube {
    pub fn new(
        od: f64,
        wall: f64,
        precurvature: f64,
        curved_len: f64,
        straight_len: f64,
        material: Material,
    ) -> Result<Self, TubeError> {
        if !(od > 0.0) {
            return Err(TubeError::NonPositiveOd { od });
        }
        if !(wall > 0.0 && wall <= od / 2.0) {
            return Err(TubeError::InvalidWall { od, wall });
        }
        if !(curved_len >= 0.0) {
            return Err(TubeError::NegativeLength {
                name: "curved_len",
                value: curved_len,
            });
        }
        if !(straight_len >= 0.0) {
            return Err(TubeError::NegativeLength {
                name: "straight_len",
                value: straight_len,
            });
        }
        if !(precurvature.abs() * od / 2.0 < 1.0) {
            return Err(TubeError::PrecurvatureTooTight { od, precurvature });
        }
        Ok(Self {
            od,
            wall,
            precurvature,
            curved_len,
            straight_len,
            material,
        })
    }

    /// Inner diameter `od - 2*wall` [mm]; 0 for a solid rod.
    pub fn inner_diameter(&self) -> f64 {
        self.od - 2.0 * self.wall
    }

    /// Second moment of area of the annular cross-section [mm⁴]:
    /// `(π/64)(OD⁴ − ID⁴)`.
    pub fn second_moment_of_area(&self) -> f64 {
        let id = self.inner_diameter();
        PI / 64.0 * (self.od.powi(4) - id.powi(4))
    }

    /// Bending stiffness `E·I` [N·mm²] (MPa·mm⁴ = N·mm²).
    pub fn bending_stiffness(&self) -> f64 {
        self.material.youngs_modulus * self.second_moment_of_area()
    }

    /// Outer-fiber strain magnitude when the tube is held at
    /// `applied_curvature` instead of its relaxed precurvature.
    pub fn fiber_strain(&self, applied_curvature: f64) -> f64 {
        outer_fiber_strain(self.od, self.precurvature, applied_curvature)
    }

    /// Outer-fiber strain when the tube is held fully straight.
    pub fn straightening_strain(&self) -> f64 {
        self.fiber_strain(0.0)
    }

    /// Largest curvature change from the relaxed shape that keeps the outer
    /// fiber within the material's elastic limit [1/mm].
    pub fn max_recoverable_curvature_change(&self) -> f64 {
        self.material.elastic_limit_strain / (self.od / 2.0)
    }

    /// Total tube length, straight plus curved section [mm].
    pub fn total_length(&self) -> f64 {
        self.straight_len + self.curved_len
    }

    /// Relaxed radius of curvature [mm]; `None` for a straight tube.
    pub fn precurvature_radius(&self) -> Option<f64> {
        (self.precurvature != 0.0).then(|| self.precurvature.recip().abs())
    }
}

/// Outer-fiber strain of an annular beam of outer diameter `od` whose
/// curvature is changed from `relaxed_curvature` to `applied_curvature`:
/// `(od/2)·|κ − k|`. The outer fiber at `y = od/2` is the worst case.
pub fn outer_fiber_strain(od: f64, relaxed_curvature: f64, applied_curvature: f64) -> f64 {
    od / 2.0 * (applied_curvature - relaxed_curvature).abs()
}

// ── Tube sets ───────────────────────────────────────────────────────────────

/// Telescopically nested tubes, ordered outermost first.
#[derive(Debug, Clone, PartialEq)]
pub struct TubeSet {
    tubes: Vec<Tube>,
}

impl TubeSet {
    pub fn new(tubes: Vec<Tube>) -> Result<Self, TubeError> {
        if tubes.is_empty() {
            return Err(TubeError::EmptyTubeSet);
        }
        Ok(Self { tubes })
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    /// Check every consecutive pair for diametral clearance
    /// `outer ID − inner OD >= min_diametral_clearance`.
    ///
    /// Order-sensitive: the report for a reversed set is not the same.
    pub fn validate_nesting(&self, min_diametral_clearance: f64) -> NestingReport {
        let pairs: Vec<PairClearance> = self
            .tubes
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let clearance = w[0].inner_diameter() - w[1].od;
                PairClearance {
                    outer_index: i,
                    inner_index: i + 1,
                    clearance,
                    pass: clearance >= min_diametral_clearance - DIM_TOLERANCE,
                }
            })
            .collect();
        NestingReport {
            min_diametral_clearance,
            pass: pairs.iter().all(|p| p.pass),
            pairs,
        }
    }
}

/// Clearance check result for one consecutive tube pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairClearance {
    pub outer_index: usize,
    pub inner_index: usize,
    /// Actual diametral clearance `outer ID − inner OD` [mm]; negative
    /// means interference.
    pub clearance: f64,
    pub pass: bool,
}

/// Per-pair nesting feasibility report for a tube set.
#[derive(Debug, Clone, PartialEq)]
pub struct NestingReport {
    pub min_diametral_clearance: f64,
    pub pairs: Vec<PairClearance>,
    pub pass: bool,
}

impl fmt::Display for NestingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pairs {
            writeln!(
                f,
                "pair {}->{}: clearance {:.2} mm (min {:.2}) {}",
                p.outer_index,
                p.inner_index,
                p.clearance,
                self.min_diametral_clearance,
                if p.pass { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}
