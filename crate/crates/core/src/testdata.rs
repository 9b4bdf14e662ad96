//! Reduction of tensile-test and fatigue-test records.
//!
//! Tensile curves are reduced to a Young's modulus (zero-intercept chord fit
//! over a small strain window), a proportional limit (first sampled strain
//! whose stress deviates from the linear prediction by more than a relative
//! tolerance), and a break strain. Fatigue logs of measured precurvature per
//! cycle are reduced to retention ratios against cycle 0 plus a check of the
//! straightening strain against the material's elastic limit, which is what
//! separates recoverable bending from progressive plastic set.

use std::fmt;

use crate::tube::{outer_fiber_strain, Tube};

/// Default strain window for the modulus chord fit; well inside the linear
/// region of the printed material (~2% strain).
pub const DEFAULT_FIT_WINDOW_STRAIN: f64 = 0.005;

/// Default relative stress deviation marking the proportional limit.
pub const DEFAULT_DEVIATION_TOL: f64 = 0.02;

// ── Errors ──────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
pub enum TestDataError {
    /// A stress-strain curve needs at least two samples.
    TooFewSamples { got: usize },
    /// Strains must be non-negative and strictly increasing.
    NonIncreasingStrain { index: usize },
    NegativeStrain { index: usize },
    /// Fewer than two samples fall inside the modulus fit window.
    WindowTooSmall { in_window: usize },
    /// Deviation tolerance must lie in (0, 1).
    InvalidTolerance { tol: f64 },
    /// The fitted modulus came out non-positive; the data is not a
    /// tensile curve.
    NonPositiveModulusFit { slope: f64 },
    /// A fatigue log needs at least one record.
    EmptyLog,
    /// Fatigue cycles must start at 0 and strictly increase.
    FirstCycleNotZero { cycle: u32 },
    NonIncreasingCycle { index: usize },
    /// Measured precurvatures cannot be negative.
    NegativeCurvature { index: usize },
    /// Retention is undefined against a straight (zero-curvature) reference.
    StraightReferenceTube,
}

impl fmt::Display for TestDataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewSamples { got } => {
                write!(f, "stress-strain curve needs at least 2 samples, got {got}")
            }
            Self::NonIncreasingStrain { index } => {
                write!(f, "strains must be strictly increasing (sample {index})")
            }
            Self::NegativeStrain { index } => {
                write!(f, "strains must be >= 0 (sample {index})")
            }
            Self::WindowTooSmall { in_window } => {
                write!(f, "window too small: {in_window} sample(s) inside the fit window")
            }
            Self::InvalidTolerance { tol } => {
                write!(f, "deviation tolerance must lie in (0, 1), got {tol}")
            }
            Self::NonPositiveModulusFit { slope } => {
                write!(f, "fitted modulus must be > 0, got {slope} MPa")
            }
            Self::EmptyLog => write!(f, "fatigue log is empty"),
            Self::FirstCycleNotZero { cycle } => {
                write!(f, "fatigue log must start at cycle 0, got {cycle}")
            }
            Self::NonIncreasingCycle { index } => {
                write!(f, "fatigue cycles must be strictly increasing (record {index})")
            }
            Self::NegativeCurvature { index } => {
                write!(f, "measured curvature must be >= 0 (record {index})")
            }
            Self::StraightReferenceTube => write!(f, "straight reference tube"),
        }
    }
}

impl std::error::Error for TestDataError {}

// ── Tensile reduction ───────────────────────────────────────────────────────

/// Monotone-strain tensile record: `(strain, stress [MPa])` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct StressStrainCurve {
    samples: Vec<(f64, f64)>,
}

impl StressStrainCurve {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self, TestDataError> {
        if samples.len() < 2 {
            return Err(TestDataError::TooFewSamples { got: samples.len() });
        }
        for (i, pair) in samples.iter().enumerate() {
            if !(pair.0 >= 0.0) {
                return Err(TestDataError::NegativeStrain { index: i });
            }
            if i > 0 && !(pair.0 > samples[i - 1].0) {
                return Err(TestDataError::NonIncreasingStrain { index: i });
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}

/// Material parameters recovered from one tensile test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensileSummary {
    /// Chord modulus over the fit window [MPa].
    pub youngs_modulus: f64,
    /// First sampled strain past the linear region.
    pub proportional_limit_strain: f64,
    /// Last sampled strain (specimen breakage).
    pub break_strain: f64,
}

/// Reduce a tensile curve to modulus, proportional limit, and break strain.
///
/// The modulus is the zero-intercept least-squares slope through samples
/// with `strain <= fit_window_strain`. The proportional limit is the
/// smallest sampled strain where `|stress − E·strain| / (E·strain)`
/// exceeds `deviation_tol`, or the last strain if the curve never leaves
/// the linear band.
pub fn analyze_tensile(
    curve: &StressStrainCurve,
    fit_window_strain: f64,
    deviation_tol: f64,
) -> Result<TensileSummary, TestDataError> {
    if !(deviation_tol > 0.0 && deviation_tol < 1.0) {
        return Err(TestDataError::InvalidTolerance { tol: deviation_tol });
    }
    let window: Vec<&(f64, f64)> = curve
        .samples
        .iter()
        .take_while(|(strain, _)| *strain <= fit_window_strain)
        .collect();
    if window.len() < 2 {
        return Err(TestDataError::WindowTooSmall {
            in_window: window.len(),
        });
    }
    let numerator: f64 = window.iter().map(|(e, s)| e * s).sum();
    let denominator: f64 = window.iter().map(|(e, _)| e * e).sum();
    let youngs_modulus = numerator / denominator;
    if !(youngs_modulus > 0.0) {
        return Err(TestDataError::NonPositiveModulusFit {
            slope: youngs_modulus,
        });
    }

    let proportional_limit_strain = curve
        .samples
        .iter()
        .filter(|(strain, _)| *strain > 0.0)
        .find(|(strain, stress)| {
            let predicted = youngs_modulus * strain;
            (stress - predicted).abs() / predicted > deviation_tol
        })
        .map(|(strain, _)| *strain)
        .unwrap_or_else(|| curve.samples.last().expect("validated non-empty").0);

    Ok(TensileSummary {
        youngs_modulus,
        proportional_limit_strain,
        break_strain: curve.samples.last().expect("validated non-empty").0,
    })
}

// ── Fatigue reduction ───────────────────────────────────────────────────────

/// Measured precurvature per bending cycle, cycle 0 first.
#[derive(Debug, Clone, PartialEq)]
pub struct FatigueLog {
    records: Vec<(u32, f64)>,
}

impl FatigueLog {
    pub fn new(records: Vec<(u32, f64)>) -> Result<Self, TestDataError> {
        let first = records.first().ok_or(TestDataError::EmptyLog)?;
        if first.0 != 0 {
            return Err(TestDataError::FirstCycleNotZero { cycle: first.0 });
        }
        for (i, record) in records.iter().enumerate() {
            if !(record.1 >= 0.0) {
                return Err(TestDataError::NegativeCurvature { index: i });
            }
            if i > 0 && record.0 <= records[i - 1].0 {
                return Err(TestDataError::NonIncreasingCycle { index: i });
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[(u32, f64)] {
        &self.records
    }
}

/// Precurvature retention over a fatigue run.
#[derive(Debug, Clone, PartialEq)]
pub struct FatigueSummary {
    /// `(cycle, k_n / k_0)` for every logged cycle; the first ratio is 1.
    pub retention: Vec<(u32, f64)>,
    pub final_retention: f64,
    /// Straightening strain at the cycle-0 precurvature.
    pub peak_strain: f64,
    /// Whether the test loading exceeds the material's elastic limit,
    /// which predicts progressive plastic set.
    pub exceeds_elastic_limit: bool,
}

/// Reduce a fatigue log against the tested tube.
///
/// The test loading is full straightening, so the peak outer-fiber strain
/// is evaluated for a curvature change from the cycle-0 precurvature to 0.
pub fn analyze_fatigue(log: &FatigueLog, tube: &Tube) -> Result<FatigueSummary, TestDataError> {
    let reference = log.records[0].1;
    if reference <= 0.0 {
        return Err(TestDataError::StraightReferenceTube);
    }
    let retention: Vec<(u32, f64)> = log
        .records
        .iter()
        .map(|&(cycle, k)| (cycle, k / reference))
        .collect();
    let peak_strain = outer_fiber_strain(tube.od, reference, 0.0);
    Ok(FatigueSummary {
        final_retention: retention.last().expect("validated non-empty").1,
        retention,
        peak_strain,
        exceeds_elastic_limit: peak_strain > tube.material.elastic_limit_strain,
    })
}

/// Elastic-limit verdict for holding a tube at `applied_curvature`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasticSetPrediction {
    pub exceeds: bool,
    pub peak_strain: f64,
    /// `elastic_limit − peak_strain`; negative when exceeded.
    pub margin: f64,
}

pub fn predict_plastic_set(tube: &Tube, applied_curvature: f64) -> PlasticSetPrediction {
    let peak_strain = tube.fiber_strain(applied_curvature);
    let limit = tube.material.elastic_limit_strain;
    PlasticSetPrediction {
        exceeds: peak_strain > limit,
        peak_strain,
        margin: limit - peak_strain,
    }
}
