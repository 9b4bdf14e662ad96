//! Mechanics and design toolkit for concentric-tube robots built from
//! 3D-printed polymer tubes.
//!
//! Nested precurved elastic tubes bend each other into a shared equilibrium
//! curvature — the stiffness-weighted mean of their precurvatures. Printed
//! polymer tubes make such assemblies cheap to produce but recover far less
//! strain than superelastic metal, so design revolves around predicting
//! equilibrium shapes and keeping every tube inside its recoverable-strain
//! budget.
//!
//! The crate covers that workflow end to end:
//!
//! - [`tube`]: tubes, materials, annular-beam stiffness, fiber strain, and
//!   nesting checks;
//! - [`mechanics`]: equilibrium curvature of overlapped tubes and piecewise
//!   constant-curvature shape synthesis;
//! - [`curvefit`]: circle fits reducing digitized tube photographs to a
//!   radius of curvature, plus model-vs-measurement RMSE;
//! - [`testdata`]: tensile-curve and fatigue-log reduction to material
//!   parameters and curvature-retention metrics;
//! - [`design`]: constrained grid search for tube pairs hitting a target
//!   equilibrium radius;
//! - [`io`]: JSON/CSV ingestion and CSV/SVG export.
//!
//! Units are millimetres and megapascals throughout, making bending
//! stiffness N·mm² with no conversion factors.
//!
//! ```
//! use ctrkit::tube::{Material, Tube};
//! use ctrkit::mechanics::equilibrium_radius_pair;
//!
//! let nylon = Material::nylon12_mjf();
//! let outer = Tube::new(3.8, 0.6, 1.0 / 69.0, 50.0, 100.0, nylon.clone()).unwrap();
//! let inner = Tube::new(2.2, 0.6, 1.0 / 21.9, 50.0, 100.0, nylon).unwrap();
//! let eq = equilibrium_radius_pair(&outer, &inner, 0.4).unwrap();
//! assert_eq!(format!("{eq}"), "54.75 mm");
//! ```

// validation predicates are written `!(x > 0.0)` on purpose: the negated
// form rejects NaN, which `x <= 0.0` would wave through
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvefit;
pub mod design;
pub mod io;
pub mod mechanics;
pub mod testdata;
pub mod tube;

pub use curvefit::{circumcircle, fit_circle_lsq, radius_rmse, CircleFit, Point2};
pub use design::{
    check_feasibility, enumerate_designs, CandidateDesign, DesignConstraints, GridSpec,
};
pub use mechanics::{
    compose_shape, equilibrium_curvature, equilibrium_radius_pair, Arc, Equilibrium, PlanarShape,
    StiffnessTerm,
};
pub use testdata::{
    analyze_fatigue, analyze_tensile, predict_plastic_set, FatigueLog, FatigueSummary,
    StressStrainCurve, TensileSummary,
};
pub use tube::{Material, Tube, TubeSet};
