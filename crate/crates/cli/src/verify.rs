//! Seeded oracle campaigns.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wmd_core::oracle::{verify_instance, LatticeOptions, OracleReport, Verdict};
use wmd_core::{Configuration, SolveOptions, VehicleSpec};

use crate::args::{Range, VerifyArgs};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub start: Configuration,
    pub goal: Configuration,
    pub spec: VehicleSpec,
    pub report: OracleReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub count: usize,
    pub r_range: [f64; 2],
    pub mu_range: [f64; 2],
    pub box_size: f64,
    pub consistent: usize,
    pub planner_beats_oracle: usize,
    pub oracle_beats_planner: usize,
    pub infeasible: usize,
    pub instances: Vec<InstanceReport>,
}

impl VerifyReport {
    pub fn all_consistent(&self) -> bool {
        self.consistent == self.count
    }
}

fn draw(rng: &mut ChaCha8Rng, r: Range) -> f64 {
    if r.0 == r.1 {
        r.0
    } else {
        rng.gen_range(r.0..r.1)
    }
}

/// The scenarios a campaign runs, in order. Depends only on the arguments.
pub fn scenarios(args: &VerifyArgs) -> Result<Vec<(Configuration, Configuration, VehicleSpec)>, CliError> {
    if !(args.box_size.is_finite() && args.box_size >= 0.0) {
        return Err(CliError::Usage("--box must be a non-negative length".into()));
    }
    if args.r_range.0 <= 0.0 {
        return Err(CliError::Usage("--r-range must be positive".into()));
    }
    if args.mu_range.0 < 0.0 {
        return Err(CliError::Usage("--mu-range must be non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let half = Range(-args.box_size / 2.0, args.box_size / 2.0);
    let mut out = Vec::with_capacity(args.count);
    for _ in 0..args.count {
        let spec = VehicleSpec::new(
            draw(&mut rng, args.r_range),
            draw(&mut rng, args.r_range),
            draw(&mut rng, args.mu_range),
            draw(&mut rng, args.mu_range),
        )?;
        let goal = Configuration::new(
            draw(&mut rng, half),
            draw(&mut rng, half),
            draw(&mut rng, Range(0.0, std::f64::consts::TAU)),
        )?;
        out.push((Configuration::origin(), goal, spec));
    }
    Ok(out)
}

/// Worker count from `WMD_THREADS`, if set to a positive integer.
fn thread_cap() -> Option<usize> {
    std::env::var("WMD_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

pub fn run_campaign(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let jobs = scenarios(args)?;
    let work = || -> Result<Vec<InstanceReport>, CliError> {
        jobs.par_iter()
            .enumerate()
            .map(|(index, (start, goal, spec))| {
                let report = verify_instance(
                    start,
                    goal,
                    spec,
                    &SolveOptions::default(),
                    &LatticeOptions::for_spec(spec),
                )?;
                Ok(InstanceReport {
                    index,
                    start: *start,
                    goal: *goal,
                    spec: *spec,
                    report,
                })
            })
            .collect()
    };
    let instances = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("WMD_THREADS: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let count_of = |v: Verdict| instances.iter().filter(|i| i.report.verdict == v).count();
    Ok(VerifyReport {
        seed: args.seed,
        count: args.count,
        r_range: [args.r_range.0, args.r_range.1],
        mu_range: [args.mu_range.0, args.mu_range.1],
        box_size: args.box_size,
        consistent: count_of(Verdict::Consistent),
        planner_beats_oracle: count_of(Verdict::PlannerBeatsOracle),
        oracle_beats_planner: count_of(Verdict::OracleBeatsPlanner),
        infeasible: count_of(Verdict::Infeasible),
        instances,
    })
}
