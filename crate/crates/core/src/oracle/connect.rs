//! Closed-form solutions for every word of at most three segments.
//!
//! Written independently of the planner's family solvers: circles are
//! handled through their centers and every solution is checked by
//! forward propagation before it is returned.

use std::f64::consts::TAU;

use crate::kinematics::propagate_path;
use crate::model::{Configuration, Segment, SegmentKind, VehicleSpec};

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w >= TAU - 1e-12 {
        0.0
    } else {
        w
    }
}

/// Center of the left (`sign = 1`) or right (`sign = -1`) turning circle.
fn center(c: &Configuration, r: f64, sign: f64) -> (f64, f64) {
    (c.x - sign * r * c.heading.sin(), c.y + sign * r * c.heading.cos())
}

/// Heading at the tangency point when leaving a left circle centered at `a`
/// towards an externally tangent right circle centered at `b`.
fn left_to_right_heading(a: (f64, f64), b: (f64, f64)) -> f64 {
    (b.0 - a.0).atan2(-(b.1 - a.1))
}

fn parse(word: &str) -> Option<Vec<SegmentKind>> {
    word.chars().map(SegmentKind::from_char).collect()
}

fn mirrored_word(kinds: &[SegmentKind]) -> Vec<SegmentKind> {
    kinds.iter().map(|k| k.mirrored()).collect()
}

/// All closed-form solutions for `word` (length 1 to 3) from the origin to a
/// canonical `goal`. Returns `None` for words outside that range or with an
/// unknown letter.
pub fn connect_canonical(
    word: &str,
    goal: &Configuration,
    spec: &VehicleSpec,
) -> Option<Vec<Vec<Segment>>> {
    let kinds = parse(word)?;
    if kinds.is_empty() || kinds.len() > 3 || kinds.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let first_turn = kinds.iter().find(|k| k.is_turn());
    let raw = if first_turn == Some(&SegmentKind::R) {
        let m = mirrored_word(&kinds);
        solve_left_first(&m, &goal.mirrored(), &spec.mirrored())
            .into_iter()
            .map(|segs| segs.iter().map(Segment::mirrored).collect())
            .collect()
    } else {
        solve_left_first(&kinds, goal, spec)
    };
    let tol = 1e-7 * goal.x.hypot(goal.y).max(1.0);
    let origin = Configuration::origin();
    Some(
        raw.into_iter()
            .filter(|segs: &Vec<Segment>| {
                segs.iter().all(|s| s.measure >= 0.0 && s.measure.is_finite())
                    && {
                        let end = propagate_path(&origin, segs, spec);
                        let dh = (end.heading - goal.heading).sin().abs()
                            + (1.0 - (end.heading - goal.heading).cos());
                        end.distance_to(goal) <= tol && dh <= 1e-7
                    }
            })
            .collect(),
    )
}

/// Same as [`connect_canonical`] between arbitrary world configurations.
pub fn connect(
    word: &str,
    start: &Configuration,
    goal: &Configuration,
    spec: &VehicleSpec,
) -> Option<Vec<Vec<Segment>>> {
    connect_canonical(word, &start.relative(goal), spec)
}

fn solve_left_first(kinds: &[SegmentKind], g: &Configuration, spec: &VehicleSpec) -> Vec<Vec<Segment>> {
    use SegmentKind::{L, R, S};
    let (rl, rr) = (spec.r_l, spec.r_r);
    let c0 = (0.0, rl);
    let s = Segment::straight;
    let l = |a: f64| Segment::left(wrap(a));
    let r = |a: f64| Segment::right(wrap(a));
    match kinds {
        [S] => vec![vec![s(g.x)]],
        [L] => vec![vec![l(g.heading)]],
        [L, S] => {
            let p = center(g, rl, 1.0);
            // line runs along the goal heading from the tangency point
            let t = (p.0 - c0.0, p.1 - c0.1);
            let (sh, ch) = g.heading.sin_cos();
            vec![vec![l(g.heading), s(t.0 * ch + t.1 * sh)]]
        }
        [S, L] => {
            let p = center(g, rl, 1.0);
            vec![vec![s(p.0), l(g.heading)]]
        }
        [L, R] => {
            let b = center(g, rr, -1.0);
            let h = left_to_right_heading(c0, b);
            vec![vec![l(h), r(h - g.heading)]]
        }
        [L, S, L] => {
            let b = center(g, rl, 1.0);
            let (dx, dy) = (b.0 - c0.0, b.1 - c0.1);
            let h = dy.atan2(dx);
            vec![vec![l(h), s(dx.hypot(dy)), l(g.heading - h)]]
        }
        [L, S, R] => {
            let b = center(g, rr, -1.0);
            let (dx, dy) = (b.0 - c0.0, b.1 - c0.1);
            let d2 = dx * dx + dy * dy;
            let rs = rl + rr;
            if d2 < rs * rs {
                return Vec::new();
            }
            let len = (d2 - rs * rs).sqrt();
            // rotate the center line by the angle the tangent makes with it
            let h = dy.atan2(dx) + rs.atan2(len);
            vec![vec![l(h), s(len), r(h - g.heading)]]
        }
        [L, R, L] => {
            let b = center(g, rl, 1.0);
            let (dx, dy) = (b.0 - c0.0, b.1 - c0.1);
            let d = dx.hypot(dy);
            let rs = rl + rr;
            if d > 2.0 * rs || d == 0.0 {
                return Vec::new();
            }
            // middle circle center on the perpendicular bisector
            let off = (rs * rs - d * d / 4.0).max(0.0).sqrt();
            let mut out = Vec::new();
            for side in [-1.0, 1.0] {
                let m = (
                    c0.0 + dx / 2.0 - side * off * dy / d,
                    c0.1 + dy / 2.0 + side * off * dx / d,
                );
                let h1 = left_to_right_heading(c0, m);
                // leaving the right circle into the left one is the mirror case
                let h2 = (m.0 - b.0).atan2(b.1 - m.1);
                out.push(vec![l(h1), r(h1 - h2), l(g.heading - h2)]);
            }
            out
        }
        [L, R, S] => {
            // right circle slides back along the goal line until tangent
            let b = center(g, rr, -1.0);
            let (ch, sh) = (g.heading.cos(), g.heading.sin());
            let rs = rl + rr;
            let w = (b.0 - c0.0, b.1 - c0.1);
            // |w - t u|^2 = rs^2
            let bq = w.0 * ch + w.1 * sh;
            let cq = w.0 * w.0 + w.1 * w.1 - rs * rs;
            let disc = bq * bq - cq;
            if disc < 0.0 {
                return Vec::new();
            }
            let mut out = Vec::new();
            for t in [bq - disc.sqrt(), bq + disc.sqrt()] {
                let m = (b.0 - t * ch, b.1 - t * sh);
                let h = left_to_right_heading(c0, m);
                out.push(vec![l(h), r(h - g.heading), s(t)]);
            }
            out
        }
        [S, L, R] => {
            // left circle slides along the x axis until tangent
            let b = center(g, rr, -1.0);
            let rs = rl + rr;
            let dy = b.1 - rl;
            let disc = rs * rs - dy * dy;
            if disc < 0.0 {
                return Vec::new();
            }
            let mut out = Vec::new();
            for t in [b.0 - disc.sqrt(), b.0 + disc.sqrt()] {
                let a = (t, rl);
                let h = left_to_right_heading(a, b);
                out.push(vec![s(t), l(h), r(h - g.heading)]);
            }
            out
        }
        [S, L, S] => {
            let arc = wrap(g.heading);
            let (sa, ca) = arc.sin_cos();
            if sa.abs() < 1e-12 {
                return Vec::new();
            }
            // arc from (t, 0): end at (t + rl sin a, rl (1 - cos a)); then line u along a
            let u = (g.y - rl * (1.0 - ca)) / sa;
            let t = g.x - rl * sa - u * ca;
            vec![vec![s(t), l(arc), s(u)]]
        }
        _ => Vec::new(),
    }
}
