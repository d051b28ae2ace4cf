//! One- and two-segment families.

use std::f64::consts::PI;

use super::{finish, solve_family, FamilyRules, SolveOptions, TOL_ANGLE};
use crate::kinematics::propagate_segment;
use crate::model::{
    wrap_two_pi, Configuration, Family, PathCandidate, Segment, VehicleSpec,
};

pub(super) fn straight(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let tol = opts.closure_tolerance(goal);
    let at_start = goal.x.hypot(goal.y) <= tol
        && crate::model::wrap_pi(goal.heading).abs() * spec.r_min() <= tol;
    if at_start {
        // start = goal: the empty path
        return vec![PathCandidate {
            family: Family::S,
            segments: Vec::new(),
            cost: 0.0,
            residual: crate::kinematics::closure_residual(
                &Configuration::origin(),
                goal,
                &[],
                spec,
            ),
        }];
    }
    finish(Family::S, vec![Segment::straight(goal.x)], goal, spec, opts)
        .into_iter()
        .collect()
}

pub(super) fn single_left(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    // a lone arc may run anywhere in [0, 2π); cost comparison prunes long ones
    finish(Family::L, vec![Segment::left(goal.heading)], goal, spec, opts)
        .into_iter()
        .collect()
}

pub(super) fn left_straight(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let arc = Segment::left(goal.heading);
    let p = propagate_segment(&Configuration::origin(), &arc, spec);
    let (s, c) = goal.heading.sin_cos();
    let len = (goal.x - p.x) * c + (goal.y - p.y) * s;
    finish(Family::LS, vec![arc, Segment::straight(len)], goal, spec, opts)
        .into_iter()
        .collect()
}

pub(super) fn straight_left(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let arc = Segment::left(goal.heading);
    let p = propagate_segment(&Configuration::origin(), &arc, spec);
    let len = goal.x - p.x;
    finish(Family::SL, vec![Segment::straight(len), arc], goal, spec, opts)
        .into_iter()
        .collect()
}

/// Left arc tangent to the right-turn circle through the goal.
pub(super) fn left_right(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    arc_bound: bool,
) -> Vec<PathCandidate> {
    let (s, c) = goal.heading.sin_cos();
    // start left center (0, r_l); goal right center
    let vx = goal.x + spec.r_r * s;
    let vy = goal.y - spec.r_r * c - spec.r_l;
    let first = wrap_two_pi(vx.atan2(-vy));
    let second = wrap_two_pi(first - goal.heading);
    let segs = vec![Segment::left(first), Segment::right(second)];
    let Some(cand) = finish(Family::LR, segs, goal, spec, opts) else {
        return Vec::new();
    };
    if arc_bound
        && cand
            .segments
            .iter()
            .any(|s| !s.is_degenerate() && s.measure > PI + TOL_ANGLE)
    {
        return Vec::new();
    }
    vec![cand]
}

/// `S`, `L` and `R` for a canonical goal. Returns the empty path when the goal
/// coincides with the start.
pub fn solve_one_segment(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let mut out = Vec::new();
    for f in [Family::S, Family::L, Family::R] {
        out.extend(solve_family(f, goal, spec, opts, FamilyRules::WEIGHTED).0);
    }
    out
}

/// `LS`, `SL`, `RS`, `SR`, `LR`, `RL` for a canonical goal. Both arcs of a
/// two-turn path are limited to at most π.
pub fn solve_two_segment(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let mut out = Vec::new();
    for f in [
        Family::LS,
        Family::SL,
        Family::RS,
        Family::SR,
        Family::LR,
        Family::RL,
    ] {
        out.extend(solve_family(f, goal, spec, opts, FamilyRules::WEIGHTED).0);
    }
    out
}
