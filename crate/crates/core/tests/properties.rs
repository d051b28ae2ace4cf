use std::f64::consts::TAU;

use proptest::prelude::*;
use wmd_core::{closure_residual, plan, Configuration, PlanRequest, VehicleSpec};

fn best_cost(start: Configuration, goal: Configuration, spec: VehicleSpec) -> f64 {
    plan(&PlanRequest::new(start, goal, spec)).unwrap().best.unwrap().cost
}

fn arb_spec() -> impl Strategy<Value = VehicleSpec> {
    (0.5f64..2.0, 0.5f64..2.0, 0.0f64..2.0, 0.0f64..2.0)
        .prop_map(|(a, b, c, d)| VehicleSpec::new(a, b, c, d).unwrap())
}

fn arb_pose(half: f64) -> impl Strategy<Value = Configuration> {
    (-half..half, -half..half, 0.0..TAU).prop_map(|(x, y, h)| Configuration::new(x, y, h).unwrap())
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rigid_motion_invariance(goal in arb_pose(8.0), spec in arb_spec(), t in arb_pose(20.0)) {
        let o = Configuration::origin();
        let a = best_cost(o, goal, spec);
        let b = best_cost(t.compose(&o), t.compose(&goal), spec);
        prop_assert!(close(a, b, 1e-8), "{a} vs {b}");
    }

    #[test]
    fn mirror_invariance(start in arb_pose(5.0), goal in arb_pose(5.0), spec in arb_spec()) {
        let a = best_cost(start, goal, spec);
        let b = best_cost(start.mirrored(), goal.mirrored(), spec.mirrored());
        prop_assert!(close(a, b, 1e-8), "{a} vs {b}");
    }

    #[test]
    fn scaling(goal in arb_pose(6.0), spec in arb_spec(), k in 0.1f64..10.0) {
        let o = Configuration::origin();
        let a = best_cost(o, goal, spec);
        let scaled = Configuration::new(goal.x * k, goal.y * k, goal.heading).unwrap();
        let b = best_cost(o, scaled, spec.scaled(k));
        prop_assert!(close(k * a, b, 1e-8), "{} vs {b}", k * a);
    }

    #[test]
    fn penalty_monotonicity(goal in arb_pose(6.0), spec in arb_spec(), d in 0.0f64..1.0) {
        let r = PlanRequest::new(Configuration::origin(), goal, spec);
        let (lo, hi) = wmd_core::cost_monotonicity_probe(&r, d).unwrap();
        prop_assert!(hi >= lo - 1e-9 * lo.max(1.0), "{lo} -> {hi}");
    }

    #[test]
    fn every_candidate_closes(start in arb_pose(5.0), goal in arb_pose(5.0), spec in arb_spec()) {
        let req = PlanRequest::new(start, goal, spec);
        let res = plan(&req).unwrap();
        let tol = req.options.tol_closure * start.distance_to(&goal).max(1.0);
        prop_assert!(!res.all_candidates.is_empty());
        for c in &res.all_candidates {
            let r = closure_residual(&start, &goal, &c.segments, &spec);
            prop_assert!(r.norm(spec.r_min()) <= tol, "{} {:?}", c.family, r);
        }
    }
}
