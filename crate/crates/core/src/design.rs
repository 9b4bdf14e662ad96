//! Printable design-space search for two-tube assemblies.
//!
//! Enumerates outer/inner tube geometry on a grid (diameters and walls on
//! linear grids, precurvature radii on a logarithmic grid plus the straight
//! option), keeps pairs that satisfy printability, nesting, and
//! strain-recovery constraints, and ranks them by how closely the predicted
//! full-overlap equilibrium matches a target radius. Scoring happens in
//! curvature space, where the model is linear and a straight prediction is
//! an ordinary point rather than a singularity.
//!
//! Enumeration is grid-partition parallel; serial and parallel runs produce
//! identical sorted output because candidates are merged in grid order and
//! ranked by a total ordering.

use std::fmt;

use rayon::prelude::*;

use crate::mechanics::equilibrium_radius_pair;
use crate::tube::{Material, Tube, DIM_TOLERANCE};

// ── Errors ──────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
pub enum DesignError {
    /// Grid steps must be positive and the radius grid non-empty.
    InvalidGrid { reason: &'static str },
    /// Constraint invariants are violated.
    InvalidConstraints { reason: &'static str },
    /// The target radius must be positive.
    InvalidTargetRadius { value: f64 },
}

impl fmt::Display for DesignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
            Self::InvalidConstraints { reason } => write!(f, "invalid constraints: {reason}"),
            Self::InvalidTargetRadius { value } => {
                write!(f, "target radius must be > 0, got {value} mm")
            }
        }
    }
}

impl std::error::Error for DesignError {}

// ── Constraints ─────────────────────────────────────────────────────────────

/// Bounds of the printable design space.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignConstraints {
    /// Smallest printable outer diameter [mm].
    pub od_min: f64,
    pub od_max: f64,
    /// Thinnest printable wall [mm].
    pub wall_min: f64,
    /// Required diametral clearance between nested tubes [mm].
    pub min_clearance: f64,
    /// Cap on the full-straightening outer-fiber strain of each tube.
    pub max_recoverable_strain: f64,
    /// Admissible precurvature radius range [mm]; straight is always allowed.
    pub radius_min: f64,
    pub radius_max: f64,
    /// Curved-section length given to every enumerated tube [mm].
    pub curved_len: f64,
}

impl Default for DesignConstraints {
    /// The demonstrated printable envelope: 2.2 mm smallest outer diameter,
    /// 0.6 mm walls, 0.4 mm diametral clearance, and a conservative 2%
    /// recoverable-strain cap.
    fn default() -> Self {
        Self {
            od_min: 2.2,
            od_max: 6.0,
            wall_min: 0.6,
            min_clearance: 0.4,
            max_recoverable_strain: 0.02,
            radius_min: 20.0,
            radius_max: 100.0,
            curved_len: 50.0,
        }
    }
}

impl DesignConstraints {
    pub fn validate(&self) -> Result<(), DesignError> {
        let reason = if !(self.od_min > 0.0 && self.od_min <= self.od_max) {
            Some("od bounds must satisfy 0 < od_min <= od_max")
        } else if !(self.wall_min > 0.0) {
            Some("wall_min must be > 0")
        } else if !(self.min_clearance >= 0.0) {
            Some("min_clearance must be >= 0")
        } else if !(self.max_recoverable_strain > 0.0 && self.max_recoverable_strain < 1.0) {
            Some("max_recoverable_strain must lie in (0, 1)")
        } else if !(self.radius_min > 0.0 && self.radius_min <= self.radius_max) {
            Some("radius bounds must satisfy 0 < radius_min <= radius_max")
        } else if !(self.curved_len > 0.0) {
            Some("curved_len must be > 0")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(DesignError::InvalidConstraints { reason }),
            None => Ok(()),
        }
    }
}

// ── Feasibility ─────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeRole {
    Outer,
    Inner,
}

impl fmt::Display for TubeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Outer => write!(f, "outer"),
            Self::Inner => write!(f, "inner"),
        }
    }
}

/// One violated design predicate.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    OdOutOfRange { role: TubeRole, od: f64 },
    WallTooThin { role: TubeRole, wall: f64 },
    InsufficientClearance { clearance: f64 },
    StrainOverLimit { role: TubeRole, strain: f64 },
    RadiusOutOfRange { role: TubeRole, radius: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OdOutOfRange { role, od } => {
                write!(f, "{role} tube outer diameter {od:.2} mm outside the admitted range")
            }
            Self::WallTooThin { role, wall } => {
                write!(f, "{role} tube wall {wall:.2} mm below the printable minimum")
            }
            Self::InsufficientClearance { clearance } => {
                write!(f, "diametral clearance {clearance:.2} mm below the required minimum")
            }
            Self::StrainOverLimit { role, strain } => write!(
                f,
                "{role} tube straightening strain {strain:.4} exceeds the recoverable cap"
            ),
            Self::RadiusOutOfRange { role, radius } => {
                write!(f, "{role} tube precurvature radius {radius:.2} mm outside the admitted range")
            }
        }
    }
}

/// Outcome of checking one tube pair against the constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

/// Check a candidate pair against every design predicate, reporting all
/// failures rather than stopping at the first. Both tubes are assumed to
/// share one print material.
pub fn check_feasibility(
    outer: &Tube,
    inner: &Tube,
    constraints: &DesignConstraints,
) -> FeasibilityReport {
    let mut violations = Vec::new();
    for (role, tube) in [(TubeRole::Outer, outer), (TubeRole::Inner, inner)] {
        tube_violations(role, tube, constraints, &mut violations);
    }
    let clearance = outer.inner_diameter() - inner.od;
    if clearance < constraints.min_clearance - DIM_TOLERANCE {
        violations.push(Violation::InsufficientClearance { clearance });
    }
    FeasibilityReport {
        pass: violations.is_empty(),
        violations,
    }
}

/// Single-tube predicates; clearance is the only pairwise one.
fn tube_violations(
    role: TubeRole,
    tube: &Tube,
    constraints: &DesignConstraints,
    violations: &mut Vec<Violation>,
) {
    if tube.od < constraints.od_min - DIM_TOLERANCE || tube.od > constraints.od_max + DIM_TOLERANCE
    {
        violations.push(Violation::OdOutOfRange { role, od: tube.od });
    }
    if tube.wall < constraints.wall_min - DIM_TOLERANCE {
        violations.push(Violation::WallTooThin {
            role,
            wall: tube.wall,
        });
    }
    let strain = tube.straightening_strain();
    if strain > constraints.max_recoverable_strain + DIM_TOLERANCE {
        violations.push(Violation::StrainOverLimit { role, strain });
    }
    if let Some(radius) = tube.precurvature_radius() {
        if radius < constraints.radius_min - DIM_TOLERANCE
            || radius > constraints.radius_max + DIM_TOLERANCE
        {
            violations.push(Violation::RadiusOutOfRange { role, radius });
        }
    }
}

// ── Grid search ─────────────────────────────────────────────────────────────

/// Grid resolution for [`enumerate_designs`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    /// Outer-diameter step [mm].
    pub od_step: f64,
    /// Wall-thickness step [mm].
    pub wall_step: f64,
    /// Number of log-spaced precurvature radii between the radius bounds.
    pub radius_count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            od_step: 0.2,
            wall_step: 0.2,
            radius_count: 16,
        }
    }
}

/// Linear grid `min, min+step, …` up to `max`, with the endpoint snapped
/// onto `max` when accumulation lands within [`DIM_TOLERANCE`] of it.
pub fn dimension_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    if max < min - DIM_TOLERANCE {
        return Vec::new();
    }
    let count = ((max - min) / step + DIM_TOLERANCE).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let value = min + i as f64 * step;
            if (value - max).abs() <= DIM_TOLERANCE {
                max
            } else {
                value
            }
        })
        .collect()
}

/// `count` log-spaced radii over `[min, max]`, endpoints exact.
pub fn log_radius_grid(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count <= 1 || max - min <= DIM_TOLERANCE {
        return vec![min];
    }
    let ratio = max / min;
    (0..count)
        .map(|i| {
            if i == 0 {
                min
            } else if i == count - 1 {
                max
            } else {
                min * ratio.powf(i as f64 / (count - 1) as f64)
            }
        })
        .collect()
}

/// A feasible tube pair with its predicted equilibrium and ranking score.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateDesign {
    pub outer: Tube,
    pub inner: Tube,
    /// Signed equilibrium curvature of the fully overlapped pair [1/mm].
    pub predicted_curvature: f64,
    /// Radius magnitude [mm]; infinite for a straight prediction.
    pub predicted_equilibrium_radius: f64,
    pub straightening_strain_outer: f64,
    pub straightening_strain_inner: f64,
    /// Curvature-space distance to the target [1/mm]; 0 is an exact match.
    pub score: f64,
}

/// Curvature-space ranking score `|prediction − target|` [1/mm].
/// Zero exactly when the prediction matches the target.
pub fn score(candidate_prediction: f64, target: f64) -> f64 {
    (candidate_prediction - target).abs()
}

/// Exhaustively enumerate tube pairs on the grid, keep the feasible ones,
/// and rank them by [`score`] against `1/target_radius`.
///
/// Ties rank the smaller outer diameter first, then the smaller inner
/// diameter, then the smaller outer precurvature radius (straight sorts as
/// infinite), then the remaining grid coordinates, making the output a
/// total order: two runs over the same inputs are identical, serial or
/// parallel.
pub fn enumerate_designs(
    target_radius: f64,
    constraints: &DesignConstraints,
    grid: &GridSpec,
    material: &Material,
) -> Result<Vec<CandidateDesign>, DesignError> {
    constraints.validate()?;
    if !(target_radius > 0.0) {
        return Err(DesignError::InvalidTargetRadius {
            value: target_radius,
        });
    }
    if !(grid.od_step > 0.0) {
        return Err(DesignError::InvalidGrid {
            reason: "od_step must be > 0",
        });
    }
    if !(grid.wall_step > 0.0) {
        return Err(DesignError::InvalidGrid {
            reason: "wall_step must be > 0",
        });
    }
    if grid.radius_count == 0 {
        return Err(DesignError::InvalidGrid {
            reason: "radius_count must be >= 1",
        });
    }

    let target_curvature = 1.0 / target_radius;
    let od_values = dimension_grid(constraints.od_min, constraints.od_max, grid.od_step);
    // straight is enumerated after the finite radii
    let radius_options: Vec<Option<f64>> =
        log_radius_grid(constraints.radius_min, constraints.radius_max, grid.radius_count)
            .into_iter()
            .map(Some)
            .chain(std::iter::once(None))
            .collect();

    // every singly-feasible tube on the grid, in grid order; the pair loop
    // below only has the clearance predicate left to check
    let mut options: Vec<Tube> = Vec::new();
    for &od in &od_values {
        for wall in dimension_grid(constraints.wall_min, od / 2.0, grid.wall_step) {
            for &radius in &radius_options {
                let Some(tube) = build_tube(od, wall, radius, constraints, material) else {
                    continue;
                };
                let mut violations = Vec::new();
                tube_violations(TubeRole::Outer, &tube, constraints, &mut violations);
                if violations.is_empty() {
                    options.push(tube);
                }
            }
        }
    }

    let per_outer: Vec<Vec<CandidateDesign>> = options
        .par_iter()
        .map(|outer| {
            options
                .iter()
                .filter(|inner| {
                    outer.inner_diameter() - inner.od
                        >= constraints.min_clearance - DIM_TOLERANCE
                })
                .map(|inner| {
                    let eq = equilibrium_radius_pair(outer, inner, constraints.min_clearance)
                        .expect("clearance was just checked");
                    CandidateDesign {
                        predicted_curvature: eq.curvature,
                        predicted_equilibrium_radius: eq.radius().unwrap_or(f64::INFINITY),
                        straightening_strain_outer: outer.straightening_strain(),
                        straightening_strain_inner: inner.straightening_strain(),
                        score: score(eq.curvature, target_curvature),
                        outer: outer.clone(),
                        inner: inner.clone(),
                    }
                })
                .collect()
        })
        .collect();

    let mut candidates: Vec<CandidateDesign> = per_outer.into_iter().flatten().collect();
    candidates.sort_by(|a, b| {
        ranking_key(a)
            .partial_cmp(&ranking_key(b))
            .expect("candidate keys are never NaN")
    });
    Ok(candidates)
}

fn build_tube(
    od: f64,
    wall: f64,
    radius: Option<f64>,
    constraints: &DesignConstraints,
    material: &Material,
) -> Option<Tube> {
    let precurvature = radius.map_or(0.0, f64::recip);
    Tube::new(od, wall, precurvature, constraints.curved_len, 0.0, material.clone()).ok()
}

/// Total ranking order; straight precurvatures sort as infinite radii.
fn ranking_key(c: &CandidateDesign) -> (f64, f64, f64, f64, f64, f64, f64) {
    (
        c.score,
        c.outer.od,
        c.inner.od,
        c.outer.precurvature_radius().unwrap_or(f64::INFINITY),
        c.outer.wall,
        c.inner.wall,
        c.inner.precurvature_radius().unwrap_or(f64::INFINITY),
    )
}
