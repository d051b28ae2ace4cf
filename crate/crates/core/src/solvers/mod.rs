//! Per-family solvers in the canonical frame (start at the origin, heading 0).
//!
//! Families whose first turn is to the right are solved as the mirror image
//! of their left-first counterpart: reflect the goal across the x-axis, swap
//! the left/right vehicle parameters, solve, then swap `L`/`R` back.

mod lambda;
mod roots;
mod simple;
mod sweep;
mod three;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::kinematics::closure_residual;
use crate::model::{
    path_cost, Configuration, Family, PathCandidate, Segment, SegmentKind, VehicleSpec,
    ZERO_MEASURE,
};

pub use lambda::{
    junction_length_for_angle, junction_s_length, lambda_from_mid_turn_angle,
    mid_turn_angle_from_lambda, LambdaParam,
};
pub use simple::{solve_one_segment, solve_two_segment};
pub use sweep::{solve_five_segment, solve_four_segment};
pub use three::{solve_ccc, solve_csc, solve_scs};

/// Tolerance on the `angle <= π` bound for two-turn paths.
pub const TOL_ANGLE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Base closure tolerance in meters; the effective tolerance is
    /// `tol_closure * max(1, |goal|)`.
    pub tol_closure: f64,
    /// Absolute tolerance on the scalar closure equations of the sweeps.
    pub tol_root: f64,
    pub lambda_grid: usize,
    pub angle_grid: usize,
    pub max_iters: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol_closure: 1e-8,
            tol_root: 1e-10,
            lambda_grid: 64,
            angle_grid: 64,
            max_iters: 50,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        let ok = self.tol_closure > 0.0
            && self.tol_root > 0.0
            && self.lambda_grid > 0
            && self.angle_grid > 0
            && self.max_iters > 0;
        if ok {
            Ok(())
        } else {
            Err(invalid("solve options must all be positive"))
        }
    }

    /// Closure tolerance for a canonical goal.
    pub fn closure_tolerance(&self, goal: &Configuration) -> f64 {
        self.tol_closure * goal.x.hypot(goal.y).max(1.0)
    }

    /// Samples of the interior turn angle used by the four- and
    /// five-segment sweeps. The 1-D sweep spends the same budget as a
    /// `lambda_grid x angle_grid` seed grid.
    pub fn sweep_samples(&self) -> usize {
        (self.lambda_grid * self.angle_grid).max(16)
    }

    /// Options with every seed grid made denser by `factor`.
    pub fn widened(&self, factor: usize) -> Self {
        Self {
            lambda_grid: self.lambda_grid * factor,
            angle_grid: self.angle_grid * factor,
            max_iters: self.max_iters * 2,
            ..*self
        }
    }
}

/// Work counters reported back to the planner.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub samples: usize,
    pub iterations: usize,
    pub roots: usize,
}

impl SolveStats {
    pub fn add(&mut self, other: SolveStats) {
        self.samples += other.samples;
        self.iterations += other.iterations;
        self.roots += other.roots;
    }
}

/// Snaps near-zero and near-2π arcs to zero and tiny negative lines to zero.
/// Returns `None` when a line is clearly negative.
fn clean_segments(mut segments: Vec<Segment>, slack: f64) -> Option<Vec<Segment>> {
    for s in &mut segments {
        if !s.measure.is_finite() {
            return None;
        }
        match s.kind {
            SegmentKind::S => {
                if s.measure < -slack {
                    return None;
                }
                s.measure = s.measure.max(0.0);
            }
            _ => {
                let m = crate::model::wrap_two_pi(s.measure);
                s.measure = if m < ZERO_MEASURE || m > TAU - ZERO_MEASURE {
                    0.0
                } else {
                    m
                };
            }
        }
    }
    Some(segments)
}

/// Validates a constructed segment list against the canonical goal and
/// packages it as a candidate.
pub(crate) fn finish(
    family: Family,
    segments: Vec<Segment>,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Option<PathCandidate> {
    let tol = opts.closure_tolerance(goal);
    let segments = clean_segments(segments, tol)?;
    let residual = closure_residual(&Configuration::origin(), goal, &segments, spec);
    if residual.norm(spec.r_min()) > tol {
        return None;
    }
    Some(PathCandidate {
        family,
        cost: path_cost(&segments, spec),
        segments,
        residual,
    })
}

fn push_unique(out: &mut Vec<PathCandidate>, cand: PathCandidate) {
    let dup = out.iter().any(|c| {
        c.family == cand.family
            && c.segments.len() == cand.segments.len()
            && c
                .segments
                .iter()
                .zip(&cand.segments)
                .all(|(a, b)| (a.measure - b.measure).abs() < 1e-6)
    });
    if !dup {
        out.push(cand);
    }
}

/// Runs `solve` on the mirrored problem and maps the result back.
fn via_mirror<F>(
    family: Family,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    solve: F,
) -> Vec<PathCandidate>
where
    F: FnOnce(&Configuration, &VehicleSpec) -> Vec<PathCandidate>,
{
    let mirrored = solve(&goal.mirrored(), &spec.mirrored());
    let mut out = Vec::new();
    for c in mirrored {
        let segs: Vec<Segment> = c.segments.iter().map(Segment::mirrored).collect();
        if let Some(cand) = finish(family, segs, goal, spec, opts) {
            push_unique(&mut out, cand);
        }
    }
    out
}

/// Whether the family is solved directly (left-first) rather than via its mirror.
fn is_left_first(family: Family) -> bool {
    family.as_str().chars().find(|&c| c != 'S') != Some('R')
}

/// Behaviour switches that differ between weighted and classical planning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct FamilyRules {
    /// Enforce `angle <= π` on both arcs of a two-turn path.
    pub cc_arc_bound: bool,
    /// Require the middle arc of a three-turn path to exceed π.
    pub ccc_long_middle: bool,
}

impl FamilyRules {
    pub const WEIGHTED: FamilyRules = FamilyRules {
        cc_arc_bound: true,
        ccc_long_middle: true,
    };
    pub const CLASSICAL: FamilyRules = FamilyRules {
        cc_arc_bound: false,
        ccc_long_middle: true,
    };
}

/// Solves a single family for a canonical goal.
pub(crate) fn solve_family(
    family: Family,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    rules: FamilyRules,
) -> (Vec<PathCandidate>, SolveStats) {
    if !is_left_first(family) {
        let mut stats = SolveStats::default();
        let out = via_mirror(family, goal, spec, opts, |g, s| {
            let (c, st) = solve_family(family.mirrored(), g, s, opts, rules);
            stats = st;
            c
        });
        return (out, stats);
    }
    let mut stats = SolveStats::default();
    let cands = match family {
        Family::S => simple::straight(goal, spec, opts),
        Family::L => simple::single_left(goal, spec, opts),
        Family::LS => simple::left_straight(goal, spec, opts),
        Family::SL => simple::straight_left(goal, spec, opts),
        Family::LR => simple::left_right(goal, spec, opts, rules.cc_arc_bound),
        Family::LSL => three::lsl(goal, spec, opts),
        Family::LSR => three::lsr(goal, spec, opts),
        Family::SLS => three::sls(goal, spec, opts),
        Family::LRL => three::lrl(goal, spec, opts, rules.ccc_long_middle),
        Family::LSRS => sweep::lsrs(goal, spec, opts, &mut stats),
        Family::SLSR => sweep::slsr(goal, spec, opts, &mut stats),
        Family::LSRSL => sweep::lsrsl(goal, spec, opts, &mut stats),
        _ => unreachable!("{family} is right-first"),
    };
    let mut out = Vec::new();
    for c in cands {
        push_unique(&mut out, c);
    }
    (out, stats)
}

pub(crate) fn check_family(family: Family, allowed: &[Family]) -> Result<()> {
    if allowed.contains(&family) {
        Ok(())
    } else {
        Err(invalid(format!(
            "family {family} not handled here (expected one of {})",
            allowed
                .iter()
                .map(|f| f.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )))
    }
}
