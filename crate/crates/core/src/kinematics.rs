//! Closed-form propagation along segments, sampling and closure residuals.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::model::{wrap_pi, Configuration, Residual, Segment, SegmentKind, VehicleSpec};

/// Endpoint of `seg` started from `c`. Arcs rotate rigidly about the turn
/// center; no integration is involved.
pub fn propagate_segment(c: &Configuration, seg: &Segment, spec: &VehicleSpec) -> Configuration {
    let (s, co) = c.heading.sin_cos();
    match seg.kind {
        SegmentKind::S => {
            Configuration::raw(c.x + seg.measure * co, c.y + seg.measure * s, c.heading)
        }
        SegmentKind::L => {
            let r = spec.r_l;
            let (cx, cy) = (c.x - r * s, c.y + r * co);
            let h = c.heading + seg.measure;
            let (s2, c2) = h.sin_cos();
            Configuration::raw(cx + r * s2, cy - r * c2, h)
        }
        SegmentKind::R => {
            let r = spec.r_r;
            let (cx, cy) = (c.x + r * s, c.y - r * co);
            let h = c.heading - seg.measure;
            let (s2, c2) = h.sin_cos();
            Configuration::raw(cx - r * s2, cy + r * c2, h)
        }
    }
}

pub fn propagate_path(c: &Configuration, segments: &[Segment], spec: &VehicleSpec) -> Configuration {
    segments
        .iter()
        .fold(*c, |acc, seg| propagate_segment(&acc, seg, spec))
}

/// `propagate_path(start, segments) - goal`, heading difference wrapped to `(-π, π]`.
pub fn closure_residual(
    start: &Configuration,
    goal: &Configuration,
    segments: &[Segment],
    spec: &VehicleSpec,
) -> Residual {
    let end = propagate_path(start, segments, spec);
    Residual {
        dx: end.x - goal.x,
        dy: end.y - goal.y,
        dtheta: wrap_pi(end.heading - goal.heading),
    }
}

/// A sampled path. All vectors have the same length.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    /// Distance travelled from the start.
    pub arc_length: Vec<f64>,
    pub cumulative_cost: Vec<f64>,
}

impl Polyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Samples the path at arc-length spacing of at most `step`, keeping every
/// segment endpoint. Degenerate segments add no points.
pub fn sample_path(
    start: &Configuration,
    segments: &[Segment],
    spec: &VehicleSpec,
    step: f64,
) -> Result<Polyline> {
    if !(step.is_finite() && step > 0.0) {
        return Err(invalid(format!("sampling step must be > 0, got {step}")));
    }
    let mut line = Polyline::default();
    line.points.push((start.x, start.y));
    line.arc_length.push(0.0);
    line.cumulative_cost.push(0.0);

    let mut pose = *start;
    let (mut s_acc, mut cost_acc) = (0.0, 0.0);
    for seg in segments {
        if seg.is_degenerate() {
            pose = propagate_segment(&pose, seg, spec);
            continue;
        }
        let length = seg.length(spec);
        // cost accrued per meter travelled
        let rate = spec.cost_rate(seg.kind) * seg.measure / length;
        let n = (length / step).ceil().max(1.0) as usize;
        for i in 1..=n {
            let frac = i as f64 / n as f64;
            let partial = Segment {
                kind: seg.kind,
                measure: seg.measure * frac,
            };
            let p = propagate_segment(&pose, &partial, spec);
            line.points.push((p.x, p.y));
            line.arc_length.push(s_acc + length * frac);
            line.cumulative_cost.push(cost_acc + rate * length * frac);
        }
        pose = propagate_segment(&pose, seg, spec);
        s_acc += length;
        cost_acc += rate * length;
    }
    Ok(line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::path_cost;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn unit() -> VehicleSpec {
        VehicleSpec::new(1.0, 1.0, 0.0, 0.0).unwrap()
    }

    fn assert_pose(c: Configuration, x: f64, y: f64, h: f64) {
        assert_abs_diff_eq!(c.x, x, epsilon = 1e-12);
        assert_abs_diff_eq!(c.y, y, epsilon = 1e-12);
        assert_abs_diff_eq!(wrap_pi(c.heading - h), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn single_segment_examples() {
        let o = Configuration::origin();
        assert_pose(propagate_segment(&o, &Segment::straight(2.5), &unit()), 2.5, 0.0, 0.0);
        assert_pose(propagate_segment(&o, &Segment::left(FRAC_PI_2), &unit()), 1.0, 1.0, FRAC_PI_2);
        assert_pose(propagate_segment(&o, &Segment::right(PI), &unit()), 0.0, -2.0, PI);
    }

    #[test]
    fn path_examples() {
        let o = Configuration::origin();
        assert_eq!(propagate_path(&o, &[], &unit()), o);
        let lsl = [
            Segment::left(FRAC_PI_2),
            Segment::straight(4.0),
            Segment::left(3.0 * FRAC_PI_2),
        ];
        assert_pose(propagate_path(&o, &lsl, &unit()), 0.0, 4.0, 0.0);
        let lr = [Segment::left(FRAC_PI_2), Segment::right(FRAC_PI_2)];
        assert_pose(propagate_path(&o, &lr, &unit()), 2.0, 2.0, 0.0);
    }

    #[test]
    fn residual_examples() {
        let o = Configuration::origin();
        let goal = Configuration::new(2.0, 2.0, 0.0).unwrap();
        let lr = [Segment::left(FRAC_PI_2), Segment::right(FRAC_PI_2)];
        let r = closure_residual(&o, &goal, &lr, &unit());
        assert!(r.norm(1.0) < 1e-12);

        let short = [Segment::left(FRAC_PI_2), Segment::right(80f64.to_radians())];
        let r = closure_residual(&o, &goal, &short, &unit());
        assert_abs_diff_eq!(r.dtheta, 10f64.to_radians(), epsilon = 1e-12);
        assert!(r.dx.abs() > 1e-3 || r.dy.abs() > 1e-3);
    }

    #[test]
    fn sampling_examples() {
        let o = Configuration::origin();
        let line = sample_path(&o, &[Segment::straight(1.0)], &unit(), 0.5).unwrap();
        assert_eq!(line.points, vec![(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)]);

        let arc = sample_path(&o, &[Segment::left(PI)], &unit(), 100.0).unwrap();
        assert_eq!(arc.len(), 2);
        let (x, y) = arc.points[1];
        assert_abs_diff_eq!(x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y, 2.0, epsilon = 1e-12);

        assert!(sample_path(&o, &[], &unit(), 0.0).is_err());
        assert!(sample_path(&o, &[], &unit(), -1.0).is_err());

        let spec = VehicleSpec::new(0.7, 1.3, 0.4, 1.1).unwrap();
        let segs = [
            Segment::left(1.0),
            Segment::straight(2.0),
            Segment::right(4.0),
            Segment::straight(0.0),
        ];
        let line = sample_path(&o, &segs, &spec, 0.05).unwrap();
        assert_abs_diff_eq!(
            *line.cumulative_cost.last().unwrap(),
            path_cost(&segs, &spec),
            epsilon = 1e-12
        );
        for w in line.arc_length.windows(2) {
            assert!(w[1] - w[0] <= 0.05 + 1e-12);
        }
        let end = propagate_path(&o, &segs, &spec);
        let (x, y) = *line.points.last().unwrap();
        assert_abs_diff_eq!(x, end.x, epsilon = 1e-12);
        assert_abs_diff_eq!(y, end.y, epsilon = 1e-12);
    }

    fn arb_segments() -> impl Strategy<Value = Vec<Segment>> {
        proptest::collection::vec(
            (0usize..3, 0.0f64..TAU).prop_map(|(k, m)| match k {
                0 => Segment::left(m),
                1 => Segment::right(m),
                _ => Segment::straight(m),
            }),
            0..6,
        )
    }

    proptest! {
        #[test]
        fn reversal_returns_to_start(
            x in -10.0f64..10.0, y in -10.0f64..10.0, h in 0.0f64..TAU,
            k in 0usize..3, m in 0.0f64..6.0, rl in 0.2f64..3.0, rr in 0.2f64..3.0,
        ) {
            let spec = VehicleSpec::new(rl, rr, 0.0, 0.0).unwrap();
            let seg = match k { 0 => Segment::left(m), 1 => Segment::right(m), _ => Segment::straight(m) };
            let c = Configuration::new(x, y, h).unwrap();
            let end = propagate_segment(&c, &seg, &spec);
            // drive back along the same curve with the heading flipped
            let flipped = Configuration::raw(end.x, end.y, end.heading + PI);
            let back = propagate_segment(&flipped, &seg.mirrored(), &spec.mirrored());
            prop_assert!((back.x - c.x).abs() < 1e-12 * (1.0 + m));
            prop_assert!((back.y - c.y).abs() < 1e-12 * (1.0 + m));
            prop_assert!(wrap_pi(back.heading + PI - c.heading).abs() < 1e-12);
        }

        #[test]
        fn rigid_motion_equivariance(
            segs in arb_segments(), tx in -20.0f64..20.0, ty in -20.0f64..20.0, th in 0.0f64..TAU,
            h in 0.0f64..TAU,
        ) {
            let spec = VehicleSpec::new(0.8, 1.7, 0.3, 0.9).unwrap();
            let t = Configuration::new(tx, ty, th).unwrap();
            let c = Configuration::new(1.0, -2.0, h).unwrap();
            let a = propagate_path(&t.compose(&c), &segs, &spec);
            let b = t.compose(&propagate_path(&c, &segs, &spec));
            prop_assert!((a.x - b.x).abs() < 1e-9);
            prop_assert!((a.y - b.y).abs() < 1e-9);
            prop_assert!(wrap_pi(a.heading - b.heading).abs() < 1e-9);
        }

        #[test]
        fn mirror_symmetry(segs in arb_segments(), x in -5.0f64..5.0, y in -5.0f64..5.0, h in 0.0f64..TAU) {
            let spec = VehicleSpec::new(0.6, 1.9, 0.0, 0.0).unwrap();
            let c = Configuration::new(x, y, h).unwrap();
            let mirrored: Vec<Segment> = segs.iter().map(Segment::mirrored).collect();
            let a = propagate_path(&c.mirrored(), &mirrored, &spec.mirrored());
            let b = propagate_path(&c, &segs, &spec).mirrored();
            prop_assert!((a.x - b.x).abs() < 1e-9);
            prop_assert!((a.y - b.y).abs() < 1e-9);
            prop_assert!(wrap_pi(a.heading - b.heading).abs() < 1e-9);
        }

        #[test]
        fn scaling(segs in arb_segments(), k in 0.1f64..10.0, h in 0.0f64..TAU) {
            let spec = VehicleSpec::new(0.6, 1.9, 0.0, 0.0).unwrap();
            let c = Configuration::new(1.5, -0.5, h).unwrap();
            let scaled_segs: Vec<Segment> = segs.iter().map(|s| match s.kind {
                SegmentKind::S => Segment::straight(s.measure * k),
                _ => *s,
            }).collect();
            let sc = Configuration::new(c.x * k, c.y * k, h).unwrap();
            let a = propagate_path(&sc, &scaled_segs, &spec.scaled(k));
            let b = propagate_path(&c, &segs, &spec);
            prop_assert!((a.x - k * b.x).abs() < 1e-9 * k.max(1.0) * 10.0);
            prop_assert!((a.y - k * b.y).abs() < 1e-9 * k.max(1.0) * 10.0);
            prop_assert!(wrap_pi(a.heading - b.heading).abs() < 1e-9);
        }
    }
}
