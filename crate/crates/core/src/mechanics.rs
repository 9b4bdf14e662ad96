//! In-plane equilibrium of overlapped precurved tubes.
//!
//! Nested tubes apply moments to one another in proportion to their bending
//! stiffnesses. When their bending planes are aligned, the overlapped region
//! settles at the stiffness-weighted mean of the precurvatures:
//!
//! ```text
//! κ = Σᵢ EᵢIᵢ kᵢ / Σᵢ EᵢIᵢ
//! ```
//!
//! [`compose_shape`] applies this balance piecewise over the segments defined
//! by tube-section transitions, producing a constant-curvature arc chain.
//! Relative rotation between tubes (out-of-plane bending, torsion) is out of
//! scope; tubes are assumed aligned in one bending plane.

use std::f64::consts::PI;
use std::fmt;

use crate::curvefit::Point2;
use crate::tube::{Tube, TubeSet, DIM_TOLERANCE};

// ── Errors ──────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
pub enum MechanicsError {
    /// Equilibrium is undefined without at least one tube term.
    NoTubes,
    /// A stiffness term must carry positive bending stiffness.
    NonPositiveStiffness { stiffness: f64 },
    /// Diametral clearance between a tube pair is below the requirement.
    NestingFailure { clearance: f64, required: f64 },
    /// One exposed length per tube is required.
    ExposureCountMismatch { tubes: usize, exposures: usize },
    /// Exposed lengths are distances and cannot be negative.
    NegativeExposure { index: usize, value: f64 },
    /// A tube cannot be exposed beyond its own total length.
    ExposureExceedsTube { index: usize, value: f64, total: f64 },
    /// Inner tubes may not extend beyond their outer neighbours.
    NonTelescoping { index: usize },
    /// An arc segment may not wind through a full turn.
    ArcSelfLoop { curvature: f64, length: f64 },
    /// Arc lengths cannot be negative.
    NegativeArcLength { length: f64 },
}

impl fmt::Display for MechanicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoTubes => write!(f, "no tubes in segment"),
            Self::NonPositiveStiffness { stiffness } => {
                write!(f, "bending stiffness must be > 0, got {stiffness} N*mm^2")
            }
            Self::NestingFailure {
                clearance,
                required,
            } => write!(
                f,
                "nesting clearance check failed: diametral clearance {clearance:.3} mm \
                 is below the required {required:.3} mm"
            ),
            Self::ExposureCountMismatch { tubes, exposures } => write!(
                f,
                "expected one exposed length per tube ({tubes}), got {exposures}"
            ),
            Self::NegativeExposure { index, value } => {
                write!(f, "exposed length of tube {index} must be >= 0, got {value} mm")
            }
            Self::ExposureExceedsTube {
                index,
                value,
                total,
            } => write!(
                f,
                "exposed length {value} mm of tube {index} exceeds its total length {total} mm"
            ),
            Self::NonTelescoping { index } => write!(
                f,
                "non-telescoping configuration: tube {index} extends beyond tube {}",
                index - 1
            ),
            Self::ArcSelfLoop { curvature, length } => write!(
                f,
                "arc of curvature {curvature} 1/mm and length {length} mm closes a full loop"
            ),
            Self::NegativeArcLength { length } => {
                write!(f, "arc length must be >= 0, got {length} mm")
            }
        }
    }
}

impl std::error::Error for MechanicsError {}

// ── Equilibrium curvature ───────────────────────────────────────────────────

/// One tube's contribution to the moment balance: its bending stiffness
/// `EᵢIᵢ` [N·mm²] and precurvature `kᵢ` [1/mm].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessTerm {
    pub stiffness: f64,
    pub precurvature: f64,
}

impl StiffnessTerm {
    pub fn new(stiffness: f64, precurvature: f64) -> Result<Self, MechanicsError> {
        if !(stiffness > 0.0) {
            return Err(MechanicsError::NonPositiveStiffness { stiffness });
        }
        Ok(Self {
            stiffness,
            precurvature,
        })
    }
}

impl From<&Tube> for StiffnessTerm {
    /// Term for the tube's curved section; the straight section carries the
    /// same stiffness with zero precurvature.
    fn from(tube: &Tube) -> Self {
        Self {
            stiffness: tube.bending_stiffness(),
            precurvature: tube.precurvature,
        }
    }
}

/// Stiffness-weighted mean precurvature `Σ EᵢIᵢkᵢ / Σ EᵢIᵢ` [1/mm].
///
/// The result always lies within `[min kᵢ, max kᵢ]` and is invariant under
/// a common positive scaling of all stiffnesses, so equal-material tubes
/// only need their second moments of area.
pub fn equilibrium_curvature(terms: &[StiffnessTerm]) -> Result<f64, MechanicsError> {
    if terms.is_empty() {
        return Err(MechanicsError::NoTubes);
    }
    let mut moment = 0.0;
    let mut stiffness = 0.0;
    for term in terms {
        if !(term.stiffness > 0.0) {
            return Err(MechanicsError::NonPositiveStiffness {
                stiffness: term.stiffness,
            });
        }
        moment += term.stiffness * term.precurvature;
        stiffness += term.stiffness;
    }
    Ok(moment / stiffness)
}

/// Equilibrium curvature with its radius-of-curvature presentation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    /// Signed equilibrium curvature [1/mm]; exactly 0 means straight.
    pub curvature: f64,
}

impl Equilibrium {
    /// Radius of curvature magnitude [mm]; `None` for a straight result.
    pub fn radius(self) -> Option<f64> {
        (self.curvature != 0.0).then(|| self.curvature.recip().abs())
    }

    pub fn is_straight(self) -> bool {
        self.curvature == 0.0
    }
}

impl fmt::Display for Equilibrium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radius() {
            Some(r) => write!(f, "{r:.2} mm"),
            None => write!(f, "straight"),
        }
    }
}

/// Equilibrium of a fully-overlapped two-tube pair, after checking that the
/// inner tube actually fits inside the outer with at least `min_clearance`
/// of diametral play.
pub fn equilibrium_radius_pair(
    outer: &Tube,
    inner: &Tube,
    min_clearance: f64,
) -> Result<Equilibrium, MechanicsError> {
    let clearance = outer.inner_diameter() - inner.od;
    if clearance < min_clearance - DIM_TOLERANCE {
        return Err(MechanicsError::NestingFailure {
            clearance,
            required: min_clearance,
        });
    }
    let curvature = equilibrium_curvature(&[outer.into(), inner.into()])?;
    Ok(Equilibrium { curvature })
}

// ── Planar shapes ───────────────────────────────────────────────────────────

/// A constant-curvature segment of the assembly centerline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    /// Signed curvature [1/mm]; positive bends toward +y.
    pub curvature: f64,
    /// Arc length [mm].
    pub length: f64,
}

impl Arc {
    pub fn new(curvature: f64, length: f64) -> Result<Self, MechanicsError> {
        if !(length >= 0.0) {
            return Err(MechanicsError::NegativeArcLength { length });
        }
        if curvature.abs() * length >= 2.0 * PI {
            return Err(MechanicsError::ArcSelfLoop { curvature, length });
        }
        Ok(Self { curvature, length })
    }
}

/// In-plane assembly centerline: arcs ordered base to tip, tangent-continuous
/// by construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlanarShape {
    arcs: Vec<Arc>,
}

/// One sampled centerline point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSample {
    /// Arclength from the base [mm].
    pub arclength: f64,
    pub position: Point2,
    /// Curvature of the arc the sample lies on [1/mm].
    pub curvature: f64,
}

impl PlanarShape {
    pub fn new(arcs: Vec<Arc>) -> Self {
        Self { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.length).sum()
    }

    /// Sample the centerline with consecutive spacing at most `step`,
    /// starting at the origin with the tangent along +x.
    ///
    /// Each arc is evaluated by exact circular kinematics from its base pose,
    /// so sampling error does not accumulate along the shape.
    ///
    /// Panics if `step <= 0`.
    pub fn samples(&self, step: f64) -> Vec<ShapeSample> {
        assert!(step > 0.0, "sampling step must be > 0");
        let first_curvature = self.arcs.first().map_or(0.0, |a| a.curvature);
        let mut out = vec![ShapeSample {
            arclength: 0.0,
            position: Point2 { x: 0.0, y: 0.0 },
            curvature: first_curvature,
        }];
        let mut pose = Pose {
            x: 0.0,
            y: 0.0,
            heading: 0.0,
        };
        let mut base_arclength = 0.0;
        for arc in &self.arcs {
            if arc.length > 0.0 {
                let subdivisions = (arc.length / step).ceil() as usize;
                for i in 1..=subdivisions {
                    let local = arc.length * i as f64 / subdivisions as f64;
                    let p = pose.advanced(arc.curvature, local);
                    out.push(ShapeSample {
                        arclength: base_arclength + local,
                        position: Point2 { x: p.x, y: p.y },
                        curvature: arc.curvature,
                    });
                }
            }
            pose = pose.advanced(arc.curvature, arc.length);
            base_arclength += arc.length;
        }
        out
    }

    /// Sampled centerline positions only; see [`PlanarShape::samples`].
    pub fn arc_points(&self, step: f64) -> Vec<Point2> {
        self.samples(step).into_iter().map(|s| s.position).collect()
    }
}

#[derive(Clone, Copy)]
struct Pose {
    x: f64,
    y: f64,
    heading: f64,
}

impl Pose {
    /// Pose after following curvature `k` for arclength `s`.
    fn advanced(self, k: f64, s: f64) -> Pose {
        if k == 0.0 {
            Pose {
                x: self.x + s * self.heading.cos(),
                y: self.y + s * self.heading.sin(),
                heading: self.heading,
            }
        } else {
            let turned = self.heading + k * s;
            Pose {
                x: self.x + (turned.sin() - self.heading.sin()) / k,
                y: self.y - (turned.cos() - self.heading.cos()) / k,
                heading: turned,
            }
        }
    }
}

// ── Piecewise shape composition ─────────────────────────────────────────────

/// Predict the in-plane shape of a nested tube assembly.
///
/// `exposed_lengths[i]` is how much of tube `i` protrudes from the base,
/// measured along the assembly arclength; tube `i` occupies `[0, Lᵢ]` with
/// its curved section at the distal end. Exposures must not increase from
/// the outermost tube inward and may not exceed any tube's total length.
///
/// Segment breakpoints are the distinct section-transition arclengths; each
/// segment's curvature is the equilibrium over the tube sections present
/// there (straight sections contribute their full stiffness at zero
/// precurvature).
pub fn compose_shape(set: &TubeSet, exposed_lengths: &[f64]) -> Result<PlanarShape, MechanicsError> {
    let tubes = set.tubes();
    if exposed_lengths.len() != tubes.len() {
        return Err(MechanicsError::ExposureCountMismatch {
            tubes: tubes.len(),
            exposures: exposed_lengths.len(),
        });
    }
    for (i, (&exposed, tube)) in exposed_lengths.iter().zip(tubes).enumerate() {
        if !(exposed >= 0.0) {
            return Err(MechanicsError::NegativeExposure {
                index: i,
                value: exposed,
            });
        }
        if exposed > tube.total_length() {
            return Err(MechanicsError::ExposureExceedsTube {
                index: i,
                value: exposed,
                total: tube.total_length(),
            });
        }
        if i > 0 && exposed > exposed_lengths[i - 1] {
            return Err(MechanicsError::NonTelescoping { index: i });
        }
    }

    let mut breakpoints = vec![0.0];
    for (&exposed, tube) in exposed_lengths.iter().zip(tubes) {
        if exposed > 0.0 {
            breakpoints.push(exposed);
            let transition = exposed - tube.curved_len;
            if transition > 0.0 && transition < exposed {
                breakpoints.push(transition);
            }
        }
    }
    breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("finite arclengths"));
    breakpoints.dedup();

    let mut arcs = Vec::with_capacity(breakpoints.len().saturating_sub(1));
    for window in breakpoints.windows(2) {
        let (start, end) = (window[0], window[1]);
        let midpoint = 0.5 * (start + end);
        let terms: Vec<StiffnessTerm> = exposed_lengths
            .iter()
            .zip(tubes)
            .filter(|(&exposed, _)| exposed >= end)
            .map(|(&exposed, tube)| {
                let in_curved_section = midpoint > exposed - tube.curved_len;
                StiffnessTerm {
                    stiffness: tube.bending_stiffness(),
                    precurvature: if in_curved_section { tube.precurvature } else { 0.0 },
                }
            })
            .collect();
        let curvature = equilibrium_curvature(&terms)?;
        arcs.push(Arc::new(curvature, end - start)?);
    }
    Ok(PlanarShape::new(arcs))
}
