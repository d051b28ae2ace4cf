use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wmd_core::ModeOverride;

#[derive(Debug, Parser)]
#[command(name = "wmd", version, about = "Minimum-cost paths for a forward-only vehicle with turn penalties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan a path and print it as JSON.
    Plan(PlanArgs),
    /// Plan a path and write a CSV polyline `s,x,y,cost`.
    Sample(SampleArgs),
    /// Plan a path and render it as SVG.
    Svg(SvgArgs),
    /// Check the planner against the brute-force oracles on random instances.
    Verify(VerifyArgs),
}

/// `x,y,theta` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose(pub f64, pub f64, pub f64);

impl FromStr for Pose {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected x,y,theta, got {s:?}"));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("not a finite number: {p:?}"))?;
        }
        Ok(Pose(v[0], v[1], v[2]))
    }
}

/// Closed interval `a,b` with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range(pub f64, pub f64);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("expected a,b, got {s:?}"))?;
        let a: f64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
        let b: f64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(format!("need finite a <= b, got {s:?}"));
        }
        Ok(Range(a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Weighted,
    Classical,
}

impl From<ModeArg> for ModeOverride {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => ModeOverride::Auto,
            ModeArg::Weighted => ModeOverride::Weighted,
            ModeArg::Classical => ModeOverride::Classical,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Scenario file (JSON); flags given alongside override its fields.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, value_name = "X,Y,THETA")]
    pub start: Option<Pose>,
    #[arg(long, allow_hyphen_values = true, value_name = "X,Y,THETA")]
    pub goal: Option<Pose>,
    /// Left turn radius, m.
    #[arg(long)]
    pub rl: Option<f64>,
    /// Right turn radius, m.
    #[arg(long)]
    pub rr: Option<f64>,
    /// Left turn penalty, m/rad.
    #[arg(long)]
    pub mul: Option<f64>,
    /// Right turn penalty, m/rad.
    #[arg(long)]
    pub mur: Option<f64>,
    /// Read headings in degrees and print angles in degrees on stderr.
    #[arg(long)]
    pub deg: bool,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Include every feasible candidate, not just the best.
    #[arg(long)]
    pub all_candidates: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Largest arc-length spacing between rows, m.
    #[arg(long, allow_hyphen_values = true)]
    pub step: f64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SvgArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub svg: PathBuf,
    /// Overlay the zero-penalty path.
    #[arg(long)]
    pub compare_classical: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Range for both turn radii, m.
    #[arg(long, default_value = "0.5,2")]
    pub r_range: Range,
    /// Range for both turn penalties, m/rad.
    #[arg(long, default_value = "0,2")]
    pub mu_range: Range,
    /// Side of the square, centered on the start, that goals are drawn from, m.
    #[arg(long = "box", default_value_t = 20.0)]
    pub box_size: f64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}
