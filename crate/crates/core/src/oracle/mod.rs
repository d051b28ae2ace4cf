//! Independent verifiers for the planner: a primitive-lattice search, a
//! free-structure segment solver and a classical shortest-path reference.

mod classical;
mod connect;
mod free;
mod lattice;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::model::{Configuration, VehicleSpec};
use crate::planner::{plan, PlanRequest};
use crate::solvers::SolveOptions;

pub use classical::{classical_dubins, ReferencePath, DUBINS_WORDS};
pub use connect::{connect, connect_canonical};
pub use free::{free_structure_solve, FreeOptions, FreeSolution};
pub use lattice::{lattice_search, LatticeOptions, LatticePath};

/// All words over `{L, R, S}` of length `1..=max_segments` with no letter
/// repeated back to back, shortest first.
pub fn enumerate_sequences(max_segments: usize) -> Result<Vec<String>> {
    if !(1..=6).contains(&max_segments) {
        return Err(invalid("max_segments must be in 1..=6"));
    }
    let mut out: Vec<String> = Vec::new();
    let mut layer: Vec<String> = vec![String::new()];
    for _ in 0..max_segments {
        layer = layer
            .iter()
            .flat_map(|w| {
                ['L', 'R', 'S']
                    .into_iter()
                    .filter(move |&c| !w.ends_with(c))
                    .map(move |c| format!("{w}{c}"))
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    PlannerBeatsOracle,
    OracleBeatsPlanner,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub planner_cost: Option<f64>,
    pub planner_family: Option<String>,
    pub lattice_cost: Option<f64>,
    pub free_structure_cost: Option<f64>,
    pub best_free_sequence: Option<String>,
    pub verdict: Verdict,
}

/// Relative agreement required between the planner and the free-structure optimum.
pub const FREE_MATCH_REL: f64 = 1e-6;

impl OracleReport {
    fn judge(&mut self, lopts: &LatticeOptions) {
        let (Some(p), Some(l), Some(f)) = (self.planner_cost, self.lattice_cost, self.free_structure_cost)
        else {
            self.verdict = Verdict::Infeasible;
            return;
        };
        let band = FREE_MATCH_REL * p.max(1.0);
        self.verdict = if p > l + lopts.slack(l) || f < p - band {
            Verdict::OracleBeatsPlanner
        } else if f > p + band {
            Verdict::PlannerBeatsOracle
        } else {
            Verdict::Consistent
        };
    }
}

/// Cheapest free-structure path over every word of at most `max_segments`.
pub fn free_structure_best(
    start: &Configuration,
    goal: &Configuration,
    spec: &VehicleSpec,
    max_segments: usize,
    fopts: &FreeOptions,
) -> Result<Option<FreeSolution>> {
    let mut best: Option<FreeSolution> = None;
    for seq in enumerate_sequences(max_segments)? {
        if let Some(s) = free_structure_solve(&seq, start, goal, spec, fopts)? {
            // shorter words come first and win ties
            if best.as_ref().map_or(true, |b| s.cost < b.cost - 1e-12 * b.cost.max(1.0)) {
                best = Some(s);
            }
        }
    }
    Ok(best)
}

/// Runs the planner and both oracles on one instance and compares costs.
pub fn verify_instance(
    start: &Configuration,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    lopts: &LatticeOptions,
) -> Result<OracleReport> {
    verify_instance_with(start, goal, spec, opts, lopts, &FreeOptions::default())
}

pub fn verify_instance_with(
    start: &Configuration,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &SolveOptions,
    lopts: &LatticeOptions,
    fopts: &FreeOptions,
) -> Result<OracleReport> {
    let planned = plan(&PlanRequest::new(*start, *goal, *spec).with_options(*opts))?;
    let lattice = lattice_search(start, goal, spec, lopts)?;
    let free = free_structure_best(start, goal, spec, 5, fopts)?;
    let mut report = OracleReport {
        planner_cost: planned.best.as_ref().map(|b| b.cost),
        planner_family: planned.best.as_ref().map(|b| b.family.to_string()),
        lattice_cost: lattice.map(|l| l.cost),
        free_structure_cost: free.as_ref().map(|f| f.cost),
        best_free_sequence: free.map(|f| f.sequence),
        verdict: Verdict::Infeasible,
    };
    report.judge(lopts);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sequence_counts() {
        assert_eq!(enumerate_sequences(1).unwrap(), vec!["L", "R", "S"]);
        assert_eq!(enumerate_sequences(2).unwrap().len(), 9);
        let five = enumerate_sequences(5).unwrap();
        assert_eq!(five.len(), 93);
        assert!(five.iter().all(|w| !w.as_bytes().windows(2).any(|p| p[0] == p[1])));
        assert!(enumerate_sequences(0).is_err());
        assert!(enumerate_sequences(7).is_err());
        assert_eq!(enumerate_sequences(6).unwrap().len(), 93 + 96);
    }

    #[test]
    fn half_turn_instance_is_consistent() {
        let spec = VehicleSpec::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let goal = Configuration::new(0.0, 0.0, PI).unwrap();
        let start = Configuration::origin();
        let r = verify_instance(
            &start,
            &goal,
            &spec,
            &SolveOptions::default(),
            &LatticeOptions::for_spec(&spec),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Consistent, "{r:?}");
        assert_eq!(r.best_free_sequence.as_deref(), Some("LSRSL"));
    }

    #[test]
    fn verdicts() {
        let spec = VehicleSpec::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let lopts = LatticeOptions::for_spec(&spec);
        let mut r = OracleReport {
            planner_cost: Some(10.0),
            planner_family: None,
            lattice_cost: Some(10.2),
            free_structure_cost: Some(10.0),
            best_free_sequence: None,
            verdict: Verdict::Infeasible,
        };
        r.judge(&lopts);
        assert_eq!(r.verdict, Verdict::Consistent);
        r.free_structure_cost = Some(9.9);
        r.judge(&lopts);
        assert_eq!(r.verdict, Verdict::OracleBeatsPlanner);
        r.free_structure_cost = Some(10.1);
        r.judge(&lopts);
        assert_eq!(r.verdict, Verdict::PlannerBeatsOracle);
        r.free_structure_cost = Some(10.0);
        r.lattice_cost = Some(9.0);
        r.judge(&lopts);
        assert_eq!(r.verdict, Verdict::OracleBeatsPlanner);
        r.lattice_cost = None;
        r.judge(&lopts);
        assert_eq!(r.verdict, Verdict::Infeasible);
    }
}
