//! Library side of the `wmd` binary: argument types, command handlers and
//! the JSON, CSV and SVG writers.

pub mod args;
pub mod output;
pub mod svg;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use wmd_core::{
    plan, sample_path, Configuration, ModeOverride, PathCandidate, PlanRequest, PlanResult,
    VehicleSpec,
};

use args::{Cli, Command, PlanArgs, ProblemArgs, SampleArgs, SvgArgs, VerifyArgs};
use output::{fmt_sig, PlanDoc};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] wmd_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("no feasible path")]
    NoPath,
    #[error("{0} of {1} instances inconsistent")]
    Inconsistent(usize, usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) | CliError::Io { .. } => 1,
            CliError::NoPath => 2,
            CliError::Inconsistent(..) => 3,
        }
    }
}

/// A planning problem as stored on disk. Headings in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub label: String,
    pub start: Configuration,
    pub goal: Configuration,
    pub spec: VehicleSpec,
}

impl ProblemArgs {
    /// Merges the scenario file (if any) with the explicit flags.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let base: Option<Scenario> = match &self.scenario {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|source| CliError::Io {
                    path: p.display().to_string(),
                    source,
                })?;
                Some(
                    serde_json::from_str(&text)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
                )
            }
            None => None,
        };
        let angle = |v: f64| if self.deg { v.to_radians() } else { v };
        let pose = |p: Option<args::Pose>, fallback: Option<Configuration>, name: &str| {
            match (p, fallback) {
                (Some(p), _) => Ok(Configuration::new(p.0, p.1, angle(p.2))?),
                (None, Some(c)) => Ok(c),
                (None, None) => Err(CliError::Usage(format!("--{name} is required"))),
            }
        };
        let start = pose(self.start, base.as_ref().map(|s| s.start), "start")?;
        let goal = pose(self.goal, base.as_ref().map(|s| s.goal), "goal")?;
        let spec_base = base.as_ref().map(|s| s.spec);
        let field = |v: Option<f64>, pick: fn(&VehicleSpec) -> f64, name: &str, default: Option<f64>| {
            v.or(spec_base.as_ref().map(pick))
                .or(default)
                .ok_or_else(|| CliError::Usage(format!("--{name} is required")))
        };
        let spec = VehicleSpec::new(
            field(self.rl, |s| s.r_l, "rl", None)?,
            field(self.rr, |s| s.r_r, "rr", None)?,
            field(self.mul, |s| s.mu_l, "mul", Some(0.0))?,
            field(self.mur, |s| s.mu_r, "mur", Some(0.0))?,
        )?;
        Ok(Scenario {
            label: base.map(|b| b.label).unwrap_or_default(),
            start,
            goal,
            spec,
        })
    }

    pub fn request(&self) -> Result<PlanRequest, CliError> {
        let s = self.scenario()?;
        Ok(PlanRequest::new(s.start, s.goal, s.spec).with_mode(ModeOverride::from(self.mode)))
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// One-line human summary; angles in degrees when `deg` is set.
pub fn summary(best: &PathCandidate, deg: bool) -> String {
    let segs: Vec<String> = best
        .segments
        .iter()
        .map(|s| {
            if s.kind.is_turn() && deg {
                format!("{}{:.2}deg", s.kind.as_char(), s.measure.to_degrees())
            } else if s.kind.is_turn() {
                format!("{}{:.4}rad", s.kind.as_char(), s.measure)
            } else {
                format!("S{:.4}m", s.measure)
            }
        })
        .collect();
    format!("{} cost {:.6} [{}]", best.family, best.cost, segs.join(" "))
}

fn planned(problem: &ProblemArgs) -> Result<(PlanRequest, PlanResult), CliError> {
    let req = problem.request()?;
    let res = plan(&req)?;
    Ok((req, res))
}

pub fn cmd_plan(a: &PlanArgs) -> Result<(), CliError> {
    let (_, res) = planned(&a.problem)?;
    let doc = PlanDoc::new(&res, a.all_candidates);
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    write_out(a.json.as_deref(), &text)?;
    match &res.best {
        Some(b) => {
            eprintln!("{}", summary(b, a.problem.deg));
            Ok(())
        }
        None => Err(CliError::NoPath),
    }
}

/// CSV rows `s,x,y,cost` along the best path.
pub fn sample_csv(req: &PlanRequest, best: &PathCandidate, step: f64) -> Result<String, CliError> {
    let line = sample_path(&req.start, &best.segments, &req.spec, step)?;
    let mut out = String::from("s,x,y,cost\n");
    for i in 0..line.len() {
        let (x, y) = line.points[i];
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig(line.arc_length[i]),
            fmt_sig(x),
            fmt_sig(y),
            fmt_sig(line.cumulative_cost[i])
        ));
    }
    Ok(out)
}

pub fn cmd_sample(a: &SampleArgs) -> Result<(), CliError> {
    if !(a.step.is_finite() && a.step > 0.0) {
        return Err(CliError::Usage(format!("--step must be > 0, got {}", a.step)));
    }
    let (req, res) = planned(&a.problem)?;
    let best = res.best.ok_or(CliError::NoPath)?;
    write_out(a.csv.as_deref(), &sample_csv(&req, &best, a.step)?)
}

pub fn svg_document(req: &PlanRequest, compare_classical: bool) -> Result<String, CliError> {
    let res = plan(req)?;
    let best = res.best.ok_or(CliError::NoPath)?;
    let r = req.spec.r_min();
    let step = r / 20.0;
    let main = sample_path(&req.start, &best.segments, &req.spec, step)?;
    let mut lines = vec![(main, format!("{} cost {:.4}", best.family, best.cost), false, "#1f4e9c")];
    if compare_classical {
        let classical = plan(&req.with_mode(ModeOverride::Classical).with_options(req.options))?;
        if let Some(c) = classical.best {
            let unweighted = req.spec.unweighted();
            let poly = sample_path(&req.start, &c.segments, &req.spec, step)?;
            let label = format!(
                "{} (zero penalty) cost {:.4}, length {:.4}",
                c.family,
                wmd_core::path_cost(&c.segments, &req.spec),
                wmd_core::path_cost(&c.segments, &unweighted)
            );
            lines.push((poly, label, true, "#e07b00"));
        }
    }
    let layers: Vec<svg::Layer> = lines
        .iter()
        .map(|(line, label, dashed, color)| svg::Layer {
            line,
            label: label.clone(),
            dashed: *dashed,
            color,
        })
        .collect();
    Ok(svg::render(&req.start, &req.goal, &layers, 0.5 * r))
}

pub fn cmd_svg(a: &SvgArgs) -> Result<(), CliError> {
    let req = a.problem.request()?;
    let doc = svg_document(&req, a.compare_classical)?;
    write_out(Some(&a.svg), &doc)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<(), CliError> {
    let report = verify::run_campaign(a)?;
    let mut text =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    if let Some(p) = &a.report {
        write_out(Some(p), &text)?;
    }
    eprintln!(
        "{} instances: {} consistent, {} planner_beats_oracle, {} oracle_beats_planner, {} infeasible",
        report.count,
        report.consistent,
        report.planner_beats_oracle,
        report.oracle_beats_planner,
        report.infeasible
    );
    if report.all_consistent() {
        Ok(())
    } else {
        Err(CliError::Inconsistent(report.count - report.consistent, report.count))
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Plan(a) => cmd_plan(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Svg(a) => cmd_svg(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("wmd: {e}");
            e.exit_code()
        }
    }
}
