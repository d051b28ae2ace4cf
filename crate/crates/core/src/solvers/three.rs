//! Three-segment families: tangent-line (CSC), line-arc-line (SCS) and
//! three-arc (CCC) constructions.

use std::f64::consts::PI;

use super::{check_family, finish, solve_family, FamilyRules, SolveOptions};
use crate::error::Result;
use crate::kinematics::propagate_segment;
use crate::model::{
    wrap_two_pi, Configuration, Family, PathCandidate, Segment, VehicleSpec, ZERO_MEASURE,
};

/// Condition number above which the line-arc-line system counts as singular.
const MAX_CONDITION: f64 = 1e12;

fn left_center(c: &Configuration, r: f64) -> (f64, f64) {
    let (s, co) = c.heading.sin_cos();
    (c.x - r * s, c.y + r * co)
}

fn right_center(c: &Configuration, r: f64) -> (f64, f64) {
    let (s, co) = c.heading.sin_cos();
    (c.x + r * s, c.y - r * co)
}

/// Outer tangent between the two left-turn circles.
pub(super) fn lsl(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let (gx, gy) = left_center(goal, spec.r_l);
    let (vx, vy) = (gx, gy - spec.r_l);
    let dist = vx.hypot(vy);
    let dir = if dist > ZERO_MEASURE { vy.atan2(vx) } else { 0.0 };
    let segs = vec![
        Segment::left(wrap_two_pi(dir)),
        Segment::straight(dist),
        Segment::left(wrap_two_pi(goal.heading - dir)),
    ];
    finish(Family::LSL, segs, goal, spec, opts).into_iter().collect()
}

/// Inner tangent from the start's left circle to the goal's right circle.
pub(super) fn lsr(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let (gx, gy) = right_center(goal, spec.r_r);
    let (vx, vy) = (gx, gy - spec.r_l);
    let dist = vx.hypot(vy);
    let rsum = spec.r_l + spec.r_r;
    if dist < rsum - opts.closure_tolerance(goal) {
        return Vec::new();
    }
    let len = (dist * dist - rsum * rsum).max(0.0).sqrt();
    let dir = vy.atan2(vx) + rsum.atan2(len);
    let segs = vec![
        Segment::left(wrap_two_pi(dir)),
        Segment::straight(len),
        Segment::right(wrap_two_pi(dir - goal.heading)),
    ];
    finish(Family::LSR, segs, goal, spec, opts).into_iter().collect()
}

/// Line, left arc, line. The arc angle is fixed by the heading change and the
/// two lengths solve a 2x2 linear system.
pub(super) fn sls(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Vec<PathCandidate> {
    let arc = goal.heading;
    if arc < ZERO_MEASURE {
        return Vec::new();
    }
    let d = propagate_segment(&Configuration::origin(), &Segment::left(arc), spec);
    let (s, c) = arc.sin_cos();
    // [1 c; 0 s] [l1; l2] = rhs
    if condition_number(c, s) > MAX_CONDITION {
        return Vec::new();
    }
    let (rx, ry) = (goal.x - d.x, goal.y - d.y);
    let l2 = ry / s;
    let l1 = rx - l2 * c;
    let segs = vec![Segment::straight(l1), Segment::left(arc), Segment::straight(l2)];
    let Some(cand) = finish(Family::SLS, segs, goal, spec, opts) else {
        return Vec::new();
    };
    let both_lines = cand.segments[0].measure >= ZERO_MEASURE && cand.segments[2].measure >= ZERO_MEASURE;
    // between two lines the arc must exceed π (open interval)
    if both_lines && !(cand.segments[1].measure > PI) {
        return Vec::new();
    }
    vec![cand]
}

/// Condition number of `[[1, c], [0, s]]`.
fn condition_number(c: f64, s: f64) -> f64 {
    let fro2 = 1.0 + c * c + s * s;
    let det = s.abs();
    if det == 0.0 {
        return f64::INFINITY;
    }
    // singular values from trace/determinant of A^T A
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let smax = ((fro2 + disc) / 2.0).sqrt();
    let smin = det / smax;
    smax / smin
}

/// Left, right, left with a middle circle tangent to both outer circles.
pub(super) fn lrl(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    long_middle: bool,
) -> Vec<PathCandidate> {
    let (c3x, c3y) = left_center(goal, spec.r_l);
    let (c1x, c1y) = (0.0, spec.r_l);
    let (dx, dy) = (c3x - c1x, c3y - c1y);
    let d = dx.hypot(dy);
    let rsum = spec.r_l + spec.r_r;
    if d > 2.0 * rsum + opts.closure_tolerance(goal) || d < ZERO_MEASURE {
        return Vec::new();
    }
    let h = (rsum * rsum - d * d / 4.0).max(0.0).sqrt();
    let (mx, my) = (c1x + dx / 2.0, c1y + dy / 2.0);
    let (px, py) = (-dy / d, dx / d);
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        let (c2x, c2y) = (mx + sign * h * px, my + sign * h * py);
        let (vx, vy) = (c2x - c1x, c2y - c1y);
        let first = vx.atan2(-vy);
        let (wx, wy) = (c3x - c2x, c3y - c2y);
        let mid_heading = (-wx).atan2(wy);
        let segs = vec![
            Segment::left(wrap_two_pi(first)),
            Segment::right(wrap_two_pi(first - mid_heading)),
            Segment::left(wrap_two_pi(goal.heading - mid_heading)),
        ];
        if let Some(c) = finish(Family::LRL, segs, goal, spec, opts) {
            if !long_middle || c.segments[1].measure > PI {
                out.push(c);
            }
        }
    }
    out
}

/// `LSL`, `LSR`, `RSL` or `RSR` by tangent-line construction.
pub fn solve_csc(
    family: Family,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Result<Vec<PathCandidate>> {
    check_family(family, &[Family::LSL, Family::LSR, Family::RSL, Family::RSR])?;
    Ok(solve_family(family, goal, spec, opts, FamilyRules::WEIGHTED).0)
}

/// `SLS` or `SRS`. Rejected when both lines are present and the arc is not in `(π, 2π)`.
pub fn solve_scs(
    family: Family,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Result<Vec<PathCandidate>> {
    check_family(family, &[Family::SLS, Family::SRS])?;
    Ok(solve_family(family, goal, spec, opts, FamilyRules::WEIGHTED).0)
}

/// `LRL` or `RLR` with the middle arc longer than π.
pub fn solve_ccc(
    family: Family,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Result<Vec<PathCandidate>> {
    check_family(family, &[Family::LRL, Family::RLR])?;
    Ok(solve_family(family, goal, spec, opts, FamilyRules::CLASSICAL).0)
}
