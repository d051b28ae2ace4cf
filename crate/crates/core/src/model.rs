//! Domain types, frames and the cost model.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Segments shorter than this (meters or radians) count as absent.
pub const ZERO_MEASURE: f64 = 1e-9;

/// Penalty sums below this switch the planner to classical mode.
pub const CLASSICAL_MU_THRESHOLD: f64 = 1e-12;

/// Reduces `theta` to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(invalid(format!("angle must be finite, got {theta}")));
    }
    Ok(wrap_two_pi(theta))
}

pub(crate) fn wrap_two_pi(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wraps to `(-π, π]`.
pub(crate) fn wrap_pi(theta: f64) -> f64 {
    let r = wrap_two_pi(theta);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Planar pose. The heading is always kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

impl Configuration {
    pub fn new(x: f64, y: f64, heading: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(invalid(format!("position must be finite, got ({x}, {y})")));
        }
        Ok(Self {
            x,
            y,
            heading: normalize_angle(heading)?,
        })
    }

    pub const fn origin() -> Self {
        Self {
            x: 0.0,
            y: 0.0,
            heading: 0.0,
        }
    }

    /// Builds a configuration from already-finite values, normalizing the heading.
    pub(crate) fn raw(x: f64, y: f64, heading: f64) -> Self {
        Self {
            x,
            y,
            heading: wrap_two_pi(heading),
        }
    }

    pub fn distance_to(&self, other: &Configuration) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Maps a pose expressed in this configuration's body frame into the world frame.
    pub fn compose(&self, local: &Configuration) -> Configuration {
        let (s, c) = self.heading.sin_cos();
        Configuration::raw(
            self.x + c * local.x - s * local.y,
            self.y + s * local.x + c * local.y,
            self.heading + local.heading,
        )
    }

    /// Expresses the world pose `world` in this configuration's body frame.
    pub fn relative(&self, world: &Configuration) -> Configuration {
        let (s, c) = self.heading.sin_cos();
        let dx = world.x - self.x;
        let dy = world.y - self.y;
        Configuration::raw(c * dx + s * dy, -s * dx + c * dy, world.heading - self.heading)
    }

    /// Reflection across the x-axis.
    pub fn mirrored(&self) -> Configuration {
        Configuration::raw(self.x, -self.y, -self.heading)
    }
}

/// The goal expressed in the frame where `start` is the origin with heading 0.
pub fn to_canonical(start: &Configuration, goal: &Configuration) -> Configuration {
    start.relative(goal)
}

/// Inverse of [`to_canonical`].
pub fn from_canonical(start: &Configuration, local: &Configuration) -> Configuration {
    start.compose(local)
}

/// Turn radii and per-radian turn penalties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleSpec {
    pub r_l: f64,
    pub r_r: f64,
    pub mu_l: f64,
    pub mu_r: f64,
}

impl VehicleSpec {
    pub fn new(r_l: f64, r_r: f64, mu_l: f64, mu_r: f64) -> Result<Self> {
        let spec = Self { r_l, r_r, mu_l, mu_r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_l.is_finite() && self.r_l > 0.0 && self.r_r.is_finite() && self.r_r > 0.0) {
            return Err(invalid(format!(
                "turn radii must be positive, got r_l={} r_r={}",
                self.r_l, self.r_r
            )));
        }
        if !(self.mu_l.is_finite() && self.mu_l >= 0.0 && self.mu_r.is_finite() && self.mu_r >= 0.0)
        {
            return Err(invalid(format!(
                "turn penalties must be non-negative, got mu_l={} mu_r={}",
                self.mu_l, self.mu_r
            )));
        }
        Ok(())
    }

    pub fn r_min(&self) -> f64 {
        self.r_l.min(self.r_r)
    }

    pub fn mu_sum(&self) -> f64 {
        self.mu_l + self.mu_r
    }

    pub fn is_classical(&self) -> bool {
        self.mu_sum() < CLASSICAL_MU_THRESHOLD
    }

    /// Same radii, penalties set to zero.
    pub fn unweighted(&self) -> VehicleSpec {
        VehicleSpec {
            mu_l: 0.0,
            mu_r: 0.0,
            ..*self
        }
    }

    /// Left and right parameters swapped.
    pub fn mirrored(&self) -> VehicleSpec {
        VehicleSpec {
            r_l: self.r_r,
            r_r: self.r_l,
            mu_l: self.mu_r,
            mu_r: self.mu_l,
        }
    }

    pub fn scaled(&self, k: f64) -> VehicleSpec {
        VehicleSpec {
            r_l: self.r_l * k,
            r_r: self.r_r * k,
            mu_l: self.mu_l * k,
            mu_r: self.mu_r * k,
        }
    }

    pub fn radius(&self, kind: SegmentKind) -> Option<f64> {
        match kind {
            SegmentKind::L => Some(self.r_l),
            SegmentKind::R => Some(self.r_r),
            SegmentKind::S => None,
        }
    }

    /// Cost per unit of segment measure: `r + mu` per radian for turns, 1 per meter for lines.
    pub fn cost_rate(&self, kind: SegmentKind) -> f64 {
        match kind {
            SegmentKind::L => self.r_l + self.mu_l,
            SegmentKind::R => self.r_r + self.mu_r,
            SegmentKind::S => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SegmentKind {
    L,
    R,
    S,
}

impl SegmentKind {
    pub fn as_char(self) -> char {
        match self {
            SegmentKind::L => 'L',
            SegmentKind::R => 'R',
            SegmentKind::S => 'S',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'L' => Some(SegmentKind::L),
            'R' => Some(SegmentKind::R),
            'S' => Some(SegmentKind::S),
            _ => None,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            SegmentKind::L => SegmentKind::R,
            SegmentKind::R => SegmentKind::L,
            SegmentKind::S => SegmentKind::S,
        }
    }

    pub fn is_turn(self) -> bool {
        self != SegmentKind::S
    }
}

/// One motion primitive. `measure` is an arc angle in radians for turns and a
/// length in meters for lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub measure: f64,
}

impl Segment {
    pub fn new(kind: SegmentKind, measure: f64) -> Result<Self> {
        if !measure.is_finite() || measure < 0.0 {
            return Err(invalid(format!("segment measure must be >= 0, got {measure}")));
        }
        if kind.is_turn() && measure >= TAU {
            return Err(invalid(format!("arc angle must be < 2π, got {measure}")));
        }
        Ok(Self { kind, measure })
    }

    pub const fn left(angle: f64) -> Self {
        Self {
            kind: SegmentKind::L,
            measure: angle,
        }
    }

    pub const fn right(angle: f64) -> Self {
        Self {
            kind: SegmentKind::R,
            measure: angle,
        }
    }

    pub const fn straight(length: f64) -> Self {
        Self {
            kind: SegmentKind::S,
            measure: length,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.measure < ZERO_MEASURE
    }

    pub fn mirrored(&self) -> Self {
        Self {
            kind: self.kind.mirrored(),
            measure: self.measure,
        }
    }

    /// Arc length travelled along the segment.
    pub fn length(&self, spec: &VehicleSpec) -> f64 {
        match spec.radius(self.kind) {
            Some(r) => r * self.measure,
            None => self.measure,
        }
    }
}

pub fn segment_cost(seg: &Segment, spec: &VehicleSpec) -> f64 {
    spec.cost_rate(seg.kind) * seg.measure
}

pub fn path_cost(segments: &[Segment], spec: &VehicleSpec) -> f64 {
    segments.iter().map(|s| segment_cost(s, spec)).sum()
}

macro_rules! families {
    ($($name:ident),* $(,)?) => {
        /// Segment-kind strings the planner solves for.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum Family {
            $($name,)*
        }

        impl Family {
            pub const ALL: &'static [Family] = &[$(Family::$name,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Family::$name => stringify!($name),)*
                }
            }
        }

        impl FromStr for Family {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $(stringify!($name) => Ok(Family::$name),)*
                    other => Err(invalid(format!("unknown family {other:?}"))),
                }
            }
        }
    };
}

families!(
    S, L, R, LS, SL, RS, SR, LR, RL, LSL, LSR, RSL, RSR, SLS, SRS, LSRS, SRSL, RSLS, SLSR, LSRSL,
    RSLSR, LRL, RLR,
);

impl Family {
    /// The candidate set used when at least one penalty is positive.
    pub const WEIGHTED: [Family; 21] = [
        Family::S,
        Family::L,
        Family::R,
        Family::LS,
        Family::SL,
        Family::RS,
        Family::SR,
        Family::LR,
        Family::RL,
        Family::LSL,
        Family::LSR,
        Family::RSL,
        Family::RSR,
        Family::SLS,
        Family::SRS,
        Family::LSRS,
        Family::SRSL,
        Family::RSLS,
        Family::SLSR,
        Family::LSRSL,
        Family::RSLSR,
    ];

    /// CSC, CCC and their degenerate forms.
    pub const CLASSICAL: [Family; 15] = [
        Family::S,
        Family::L,
        Family::R,
        Family::LS,
        Family::SL,
        Family::RS,
        Family::SR,
        Family::LR,
        Family::RL,
        Family::LSL,
        Family::LSR,
        Family::RSL,
        Family::RSR,
        Family::LRL,
        Family::RLR,
    ];

    pub fn kinds(self) -> Vec<SegmentKind> {
        self.as_str()
            .chars()
            .map(|c| SegmentKind::from_char(c).expect("family strings use L, R, S"))
            .collect()
    }

    pub fn len(self) -> usize {
        self.as_str().len()
    }

    pub fn mirrored(self) -> Family {
        let s: String = self
            .as_str()
            .chars()
            .map(|c| match c {
                'L' => 'R',
                'R' => 'L',
                c => c,
            })
            .collect();
        s.parse().expect("mirror of a family is a family")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Mismatch between a propagated endpoint and the goal.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Residual {
    pub dx: f64,
    pub dy: f64,
    pub dtheta: f64,
}

impl Residual {
    /// `max(|dx|, |dy|, r_min·|dtheta|)`
    pub fn norm(&self, r_min: f64) -> f64 {
        self.dx.abs().max(self.dy.abs()).max(r_min * self.dtheta.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathCandidate {
    pub family: Family,
    pub segments: Vec<Segment>,
    pub cost: f64,
    pub residual: Residual,
}

impl PathCandidate {
    pub fn is_feasible(&self, tol_closure: f64, r_min: f64) -> bool {
        self.residual.norm(r_min) <= tol_closure
    }

    pub fn nondegenerate_count(&self) -> usize {
        self.segments.iter().filter(|s| !s.is_degenerate()).count()
    }

    /// Family string with degenerate segments dropped and merged neighbours collapsed.
    pub fn collapsed_structure(&self) -> String {
        let mut out = String::new();
        for s in self.segments.iter().filter(|s| !s.is_degenerate()) {
            let c = s.kind.as_char();
            if !out.ends_with(c) {
                out.push(c);
            }
        }
        out
    }
}

/// Total order used to select the best candidate: cost (with a relative
/// tie band), then non-degenerate segment count, then listed segment count,
/// then family name.
pub(crate) fn compare_candidates(a: &PathCandidate, b: &PathCandidate) -> Ordering {
    let band = 1e-9 * a.cost.abs().max(b.cost.abs()).max(1.0);
    if (a.cost - b.cost).abs() > band {
        return a.cost.total_cmp(&b.cost);
    }
    a.nondegenerate_count()
        .cmp(&b.nondegenerate_count())
        .then(a.segments.len().cmp(&b.segments.len()))
        .then(a.family.as_str().cmp(b.family.as_str()))
        .then(a.cost.total_cmp(&b.cost))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weighted,
    Classical,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub families_evaluated: usize,
    /// Interior-angle samples used by the 4/5-segment sweeps.
    pub sweep_samples: usize,
    /// Root refinement iterations across all families.
    pub root_iterations: usize,
    pub roots_found: usize,
    /// Set when the first pass found nothing and a denser sweep was run.
    pub retried: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanResult {
    pub best: Option<PathCandidate>,
    pub all_candidates: Vec<PathCandidate>,
    pub mode: Mode,
    pub diagnostics: Diagnostics,
}
