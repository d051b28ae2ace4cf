//! Weighted Markov-Dubins path planning.
//!
//! A forward-only planar vehicle turns left with radius `r_l` and right with
//! radius `r_r`, and pays an extra `mu_l` (resp. `mu_r`) meters of cost per
//! radian turned. [`planner::plan`] returns the cheapest path between two
//! oriented configurations by solving every candidate family of at most five
//! segments and comparing costs.
//!
//! ```
//! use wmd_core::{plan, Configuration, PlanRequest, VehicleSpec};
//!
//! let start = Configuration::new(0.0, 0.0, 0.0).unwrap();
//! let goal = Configuration::new(0.0, 0.0, std::f64::consts::PI).unwrap();
//! let spec = VehicleSpec::new(1.0, 1.0, 1.0, 1.0).unwrap();
//! let result = plan(&PlanRequest::new(start, goal, spec)).unwrap();
//! let best = result.best.unwrap();
//! assert_eq!(best.family.as_str(), "LSRSL");
//! assert!((best.cost - 13.377).abs() < 0.01);
//! ```

pub mod error;
pub mod kinematics;
pub mod model;
pub mod oracle;
pub mod planner;
pub mod solvers;

pub use error::{Error, Result};
pub use kinematics::{
    closure_residual, propagate_path, propagate_segment, sample_path, Polyline,
};
pub use model::{
    normalize_angle, path_cost, segment_cost, to_canonical, Configuration, Diagnostics, Family,
    Mode, PathCandidate, PlanResult, Residual, Segment, SegmentKind, VehicleSpec,
};
pub use planner::{cost_monotonicity_probe, plan, ModeOverride, PlanRequest};
pub use solvers::{LambdaParam, SolveOptions};
