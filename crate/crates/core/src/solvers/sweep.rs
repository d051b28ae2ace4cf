//! Four- and five-segment families.
//!
//! In these families the arc between two lines turns through
//! `2π - 2·acos(1/λ)` and each line joining opposite turns has length
//! `(mu_l + mu_r)/sqrt(λ² - 1)`. Both depend only on λ, so the interior
//! angle `φ ∈ (π, 2π)` parameterizes them. The heading equation removes the
//! outer turn angle, the remaining position equations collapse to one scalar
//! equation in `φ`, and that equation is bracketed on a uniform sweep and
//! refined with Brent's method.

use std::f64::consts::PI;

use super::lambda::junction_length_for_angle;
use super::roots::{brent, golden_min};
use super::{check_family, finish, solve_family, FamilyRules, SolveOptions, SolveStats};
use crate::error::Result;
use crate::kinematics::propagate_path;
use crate::model::{wrap_two_pi, Configuration, Family, PathCandidate, Segment, VehicleSpec};

/// A scalar closure equation in the interior angle plus a builder for the
/// segment list at a root.
trait Closure {
    fn eval(&self, phi: f64) -> f64;
    fn segments(&self, phi: f64) -> Option<Vec<Segment>>;
}

/// `L φ_out, S l(φ), R φ, S free`
struct Lsrs<'a> {
    goal: &'a Configuration,
    spec: &'a VehicleSpec,
}

impl Lsrs<'_> {
    /// Endpoint of the first three segments, plus the turn angle used.
    fn head(&self, phi: f64) -> (Configuration, [Segment; 3]) {
        let segs = [
            Segment::left(wrap_two_pi(self.goal.heading + phi)),
            Segment::straight(junction_length_for_angle(phi, self.spec)),
            Segment::right(phi),
        ];
        (propagate_path(&Configuration::origin(), &segs, self.spec), segs)
    }
}

impl Closure for Lsrs<'_> {
    fn eval(&self, phi: f64) -> f64 {
        let (p, _) = self.head(phi);
        let (s, c) = self.goal.heading.sin_cos();
        // offset of the goal from the final line through p
        c * (self.goal.y - p.y) - s * (self.goal.x - p.x)
    }

    fn segments(&self, phi: f64) -> Option<Vec<Segment>> {
        let (p, segs) = self.head(phi);
        let (s, c) = self.goal.heading.sin_cos();
        let free = c * (self.goal.x - p.x) + s * (self.goal.y - p.y);
        let mut v = segs.to_vec();
        v.push(Segment::straight(free));
        Some(v)
    }
}

/// `S free, L φ, S l(φ), R φ_out`
struct Slsr<'a> {
    goal: &'a Configuration,
    spec: &'a VehicleSpec,
}

impl Slsr<'_> {
    fn tail(&self, phi: f64) -> (Configuration, [Segment; 3]) {
        let segs = [
            Segment::left(phi),
            Segment::straight(junction_length_for_angle(phi, self.spec)),
            Segment::right(wrap_two_pi(phi - self.goal.heading)),
        ];
        (propagate_path(&Configuration::origin(), &segs, self.spec), segs)
    }
}

impl Closure for Slsr<'_> {
    fn eval(&self, phi: f64) -> f64 {
        self.goal.y - self.tail(phi).0.y
    }

    fn segments(&self, phi: f64) -> Option<Vec<Segment>> {
        let (q, segs) = self.tail(phi);
        let mut v = vec![Segment::straight(self.goal.x - q.x)];
        v.extend(segs);
        Some(v)
    }
}

/// `L φ1, S l(φ), R φ, S l(φ), L φ3`
///
/// The middle block is a fixed rigid motion for a given `φ`. Rotating the
/// start about its left-turn center carries the left-turn center of the
/// block's endpoint around a circle, so the goal's left center is reachable
/// iff both lie at the same distance from the start's left center.
struct Lsrsl<'a> {
    goal: &'a Configuration,
    spec: &'a VehicleSpec,
}

impl Lsrsl<'_> {
    fn block(&self, phi: f64) -> [Segment; 3] {
        let l = junction_length_for_angle(phi, self.spec);
        [Segment::straight(l), Segment::right(phi), Segment::straight(l)]
    }

    /// Left center of the block endpoint, relative to the start's left center.
    fn block_center(&self, phi: f64) -> (f64, f64) {
        let q = propagate_path(&Configuration::origin(), &self.block(phi), self.spec);
        let (s, c) = q.heading.sin_cos();
        (q.x - self.spec.r_l * s, q.y + self.spec.r_l * c - self.spec.r_l)
    }

    fn goal_center(&self) -> (f64, f64) {
        let (s, c) = self.goal.heading.sin_cos();
        (
            self.goal.x - self.spec.r_l * s,
            self.goal.y + self.spec.r_l * c - self.spec.r_l,
        )
    }
}

impl Closure for Lsrsl<'_> {
    fn eval(&self, phi: f64) -> f64 {
        let (bx, by) = self.block_center(phi);
        let (gx, gy) = self.goal_center();
        bx.hypot(by) - gx.hypot(gy)
    }

    fn segments(&self, phi: f64) -> Option<Vec<Segment>> {
        let (bx, by) = self.block_center(phi);
        let (gx, gy) = self.goal_center();
        let first = if gx.hypot(gy) < 1e-12 {
            0.0
        } else {
            wrap_two_pi(gy.atan2(gx) - by.atan2(bx))
        };
        let last = wrap_two_pi(self.goal.heading - first + phi);
        let mut v = vec![Segment::left(first)];
        v.extend(self.block(phi));
        v.push(Segment::left(last));
        Some(v)
    }
}

/// Sweeps `φ` over `[π, 2π)`, refines every bracketed sign change and every
/// near-tangent local minimum of `|f|`, and returns the distinct roots.
fn sweep_roots<C: Closure>(closure: &C, opts: &SolveOptions, stats: &mut SolveStats) -> Vec<f64> {
    let n = opts.sweep_samples();
    let step = PI / n as f64;
    let xs: Vec<f64> = (0..n).map(|k| PI + step * k as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| closure.eval(x)).collect();
    stats.samples += n;

    let mut roots = Vec::new();
    for k in 0..n - 1 {
        let (fa, fb) = (fs[k], fs[k + 1]);
        if !(fa.is_finite() && fb.is_finite()) {
            continue;
        }
        if fa == 0.0 || fa.signum() != fb.signum() {
            let (x, it) = brent(
                |x| closure.eval(x),
                xs[k],
                xs[k + 1],
                fa,
                fb,
                opts.tol_root * 1e-3,
                opts.max_iters,
            );
            stats.iterations += it;
            roots.push(x);
        }
    }
    // double roots: |f| dips towards zero without changing sign
    for k in 1..n - 1 {
        let (fa, fm, fb) = (fs[k - 1], fs[k], fs[k + 1]);
        let same_sign = fa.signum() == fm.signum() && fm.signum() == fb.signum();
        if same_sign && fm.abs() <= fa.abs() && fm.abs() <= fb.abs() && fm.abs() < 0.1 * step {
            let (x, fx, it) = golden_min(|x| closure.eval(x).abs(), xs[k - 1], xs[k + 1], 4 * opts.max_iters);
            stats.iterations += it;
            if fx.abs() <= opts.tol_root.sqrt() {
                roots.push(x);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
    stats.roots += roots.len();
    roots
}

fn collect<C: Closure>(
    family: Family,
    closure: &C,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Vec<PathCandidate> {
    sweep_roots(closure, opts, stats)
        .into_iter()
        .filter(|&phi| phi > PI)
        .filter_map(|phi| closure.segments(phi))
        .filter_map(|segs| finish(family, segs, goal, spec, opts))
        .collect()
}

pub(super) fn lsrs(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Vec<PathCandidate> {
    collect(Family::LSRS, &Lsrs { goal, spec }, goal, spec, opts, stats)
}

pub(super) fn slsr(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Vec<PathCandidate> {
    collect(Family::SLSR, &Slsr { goal, spec }, goal, spec, opts, stats)
}

pub(super) fn lsrsl(
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Vec<PathCandidate> {
    collect(Family::LSRSL, &Lsrsl { goal, spec }, goal, spec, opts, stats)
}

/// `LSRS`, `SRSL`, `RSLS` or `SLSR`. Each root fixes the interior angle,
/// the junction line, the outer turn and the free line.
pub fn solve_four_segment(
    family: Family,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Result<Vec<PathCandidate>> {
    check_family(
        family,
        &[Family::LSRS, Family::SRSL, Family::RSLS, Family::SLSR],
    )?;
    Ok(solve_family(family, goal, spec, opts, FamilyRules::WEIGHTED).0)
}

/// `LSRSL` or `RSLSR`. Both lines have the junction length of the interior arc.
pub fn solve_five_segment(
    family: Family,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
) -> Result<Vec<PathCandidate>> {
    check_family(family, &[Family::LSRSL, Family::RSLSR])?;
    Ok(solve_family(family, goal, spec, opts, FamilyRules::WEIGHTED).0)
}
