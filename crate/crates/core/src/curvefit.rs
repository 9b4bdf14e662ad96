//! Circle fitting for digitized tube centerlines.
//!
//! Bent-tube photographs are reduced to a radius of curvature by digitizing
//! points along the tube and fitting a circle. Two fits are provided: the
//! exact circumcircle through three points, and an algebraic least-squares
//! fit for any number of points. The algebraic fit minimizes
//! `Σ (x² + y² + Dx + Ey + F)²` over the circle coefficients, which has a
//! closed-form solution and coincides with the circumcircle when given
//! exactly three points. The reported `rms_residual` is always the geometric
//! one, `rms(|‖p − center‖ − radius|)`.

use std::fmt;

/// Twice-the-triangle-area threshold below which three points are treated
/// as collinear [mm²]. Far below any plausible digitization precision.
const COLLINEAR_AREA_TOLERANCE: f64 = 1e-9;

/// Relative determinant threshold below which the least-squares normal
/// system is treated as singular.
const SINGULAR_DET_TOLERANCE: f64 = 1e-12;

// ── Errors ──────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
pub enum FitError {
    /// Two of the input points coincide.
    DuplicatePoints,
    /// The three points span no area.
    CollinearPoints,
    /// A least-squares fit needs at least three points.
    InsufficientPoints { got: usize },
    /// The normal system is singular (collinear or coincident points).
    DegenerateConfiguration,
    /// RMSE over an empty measurement list is undefined.
    NoMeasurements,
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicatePoints => write!(f, "duplicate points"),
            Self::CollinearPoints => write!(f, "collinear points"),
            Self::InsufficientPoints { got } => {
                write!(f, "insufficient points: need at least 3, got {got}")
            }
            Self::DegenerateConfiguration => write!(f, "degenerate configuration"),
            Self::NoMeasurements => write!(f, "no measurements"),
        }
    }
}

impl std::error::Error for FitError {}

// ── Types ───────────────────────────────────────────────────────────────────

/// A planar point [mm].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// A fitted circle with its geometric residual statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub center: Point2,
    /// Fitted radius [mm].
    pub radius: f64,
    /// Root-mean-square of radial residuals `|‖p − center‖ − radius|` [mm].
    pub rms_residual: f64,
    pub n_points: usize,
}

fn geometric_rms(points: &[Point2], center: Point2, radius: f64) -> f64 {
    let sum_sq: f64 = points
        .iter()
        .map(|&p| (p.distance(center) - radius).powi(2))
        .sum();
    (sum_sq / points.len() as f64).sqrt()
}

// ── Fits ────────────────────────────────────────────────────────────────────

/// The unique circle through three pairwise-distinct, non-collinear points.
pub fn circumcircle(p1: Point2, p2: Point2, p3: Point2) -> Result<CircleFit, FitError> {
    if p1 == p2 || p1 == p3 || p2 == p3 {
        return Err(FitError::DuplicatePoints);
    }
    // work relative to p1 for conditioning
    let (bx, by) = (p2.x - p1.x, p2.y - p1.y);
    let (cx, cy) = (p3.x - p1.x, p3.y - p1.y);
    let cross = bx * cy - by * cx; // twice the signed triangle area
    if cross.abs() < COLLINEAR_AREA_TOLERANCE {
        return Err(FitError::CollinearPoints);
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / (2.0 * cross);
    let uy = (bx * c2 - cx * b2) / (2.0 * cross);
    let center = Point2::new(p1.x + ux, p1.y + uy);
    let radius = (ux * ux + uy * uy).sqrt();
    let points = [p1, p2, p3];
    Ok(CircleFit {
        center,
        radius,
        rms_residual: geometric_rms(&points, center, radius),
        n_points: 3,
    })
}

/// Algebraic least-squares circle through `points`.
///
/// Solved in centroid-centered coordinates, where the normal equations of
/// `Σ (x² + y² + Dx + Ey + F)²` reduce to a 2×2 system for the center.
/// Exact-interpolation cases (three points, or any zero-noise circle)
/// reproduce the generating circle.
pub fn fit_circle_lsq(points: &[Point2]) -> Result<CircleFit, FitError> {
    let n = points.len();
    if n < 3 {
        return Err(FitError::InsufficientPoints { got: n });
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.x).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.y).sum::<f64>() / nf;

    let (mut suu, mut suv, mut svv) = (0.0, 0.0, 0.0);
    let (mut suuu, mut svvv, mut suvv, mut svuu) = (0.0, 0.0, 0.0, 0.0);
    for p in points {
        let u = p.x - mx;
        let v = p.y - my;
        suu += u * u;
        suv += u * v;
        svv += v * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }

    let det = suu * svv - suv * suv;
    let trace = suu + svv;
    if trace <= 0.0 || det <= SINGULAR_DET_TOLERANCE * trace * trace {
        return Err(FitError::DegenerateConfiguration);
    }

    let rhs_u = 0.5 * (suuu + suvv);
    let rhs_v = 0.5 * (svvv + svuu);
    let uc = (rhs_u * svv - rhs_v * suv) / det;
    let vc = (rhs_v * suu - rhs_u * suv) / det;

    let center = Point2::new(mx + uc, my + vc);
    let radius = (uc * uc + vc * vc + trace / nf).sqrt();
    Ok(CircleFit {
        center,
        radius,
        rms_residual: geometric_rms(points, center, radius),
        n_points: n,
    })
}

/// Root-mean-square error of measured radii against a predicted radius [mm].
pub fn radius_rmse(predicted_radius: f64, measured_radii: &[f64]) -> Result<f64, FitError> {
    if measured_radii.is_empty() {
        return Err(FitError::NoMeasurements);
    }
    let sum_sq: f64 = measured_radii
        .iter()
        .map(|m| (m - predicted_radius).powi(2))
        .sum();
    Ok((sum_sq / measured_radii.len() as f64).sqrt())
}
