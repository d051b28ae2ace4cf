//! Candidate enumeration and selection.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::kinematics::closure_residual;
use crate::model::{
    compare_candidates, to_canonical, Configuration, Diagnostics, Family, Mode, PathCandidate,
    PlanResult, VehicleSpec,
};
use crate::solvers::{solve_family, FamilyRules, SolveOptions, SolveStats};

pub use crate::solvers::solve_ccc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeOverride {
    #[default]
    Auto,
    Weighted,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanRequest {
    pub start: Configuration,
    pub goal: Configuration,
    pub spec: VehicleSpec,
    pub options: SolveOptions,
    pub mode_override: Option<ModeOverride>,
}

impl PlanRequest {
    pub fn new(start: Configuration, goal: Configuration, spec: VehicleSpec) -> Self {
        Self {
            start,
            goal,
            spec,
            options: SolveOptions::default(),
            mode_override: None,
        }
    }

    pub fn with_mode(mut self, mode: ModeOverride) -> Self {
        self.mode_override = Some(mode);
        self
    }

    pub fn with_options(mut self, options: SolveOptions) -> Self {
        self.options = options;
        self
    }

    /// Mode the planner will run in.
    pub fn mode(&self) -> Mode {
        match self.mode_override.unwrap_or_default() {
            ModeOverride::Weighted => Mode::Weighted,
            ModeOverride::Classical => Mode::Classical,
            ModeOverride::Auto if self.spec.is_classical() => Mode::Classical,
            ModeOverride::Auto => Mode::Weighted,
        }
    }

    fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        self.options.validate()?;
        for c in [&self.start, &self.goal] {
            if !(c.x.is_finite() && c.y.is_finite() && c.heading.is_finite()) {
                return Err(invalid("configurations must be finite"));
            }
        }
        Ok(())
    }
}

fn solve_all(
    families: &[Family],
    rules: FamilyRules,
    req: &PlanRequest,
    opts: &SolveOptions,
    diag: &mut Diagnostics,
) -> Vec<PathCandidate> {
    let local = to_canonical(&req.start, &req.goal);
    let world_tol = opts.tol_closure * req.start.distance_to(&req.goal).max(1.0);
    let mut stats = SolveStats::default();
    let mut out = Vec::new();
    for &family in families {
        let (cands, st) = solve_family(family, &local, &req.spec, opts, rules);
        stats.add(st);
        diag.families_evaluated += 1;
        for mut c in cands {
            c.residual = closure_residual(&req.start, &req.goal, &c.segments, &req.spec);
            if c.is_feasible(world_tol, req.spec.r_min()) {
                out.push(c);
            }
        }
    }
    diag.sweep_samples += stats.samples;
    diag.root_iterations += stats.iterations;
    diag.roots_found += stats.roots;
    out
}

/// Plans the minimum-cost path from `req.start` to `req.goal`.
///
/// `best` is `None` only when no family produced a feasible candidate, even
/// after a second pass with denser sweeps.
pub fn plan(req: &PlanRequest) -> Result<PlanResult> {
    req.validate()?;
    let mode = req.mode();
    let (families, rules): (&[Family], _) = match mode {
        Mode::Weighted => (&Family::WEIGHTED, FamilyRules::WEIGHTED),
        Mode::Classical => (&Family::CLASSICAL, FamilyRules::CLASSICAL),
    };
    let mut diagnostics = Diagnostics::default();
    let mut cands = solve_all(families, rules, req, &req.options, &mut diagnostics);
    if cands.is_empty() {
        diagnostics.retried = true;
        cands = solve_all(families, rules, req, &req.options.widened(4), &mut diagnostics);
    }
    cands.sort_by(|a, b| {
        a.family
            .as_str()
            .cmp(b.family.as_str())
            .then(a.cost.total_cmp(&b.cost))
    });
    let best = cands.iter().min_by(|a, b| compare_candidates(a, b)).cloned();
    Ok(PlanResult {
        best,
        all_candidates: cands,
        mode,
        diagnostics,
    })
}

/// Optimal costs before and after raising both turn penalties by `delta_mu`.
pub fn cost_monotonicity_probe(req: &PlanRequest, delta_mu: f64) -> Result<(f64, f64)> {
    if !(delta_mu >= 0.0 && delta_mu.is_finite()) {
        return Err(invalid("delta_mu must be non-negative"));
    }
    let mut high = *req;
    high.spec.mu_l += delta_mu;
    high.spec.mu_r += delta_mu;
    let cost = |r: &PlanRequest| -> Result<f64> {
        plan(r)?
            .best
            .map(|b| b.cost)
            .ok_or_else(|| Error::Domain("no feasible path".into()))
    };
    Ok((cost(req)?, cost(&high)?))
}
