//! Serialized forms of planner results.

use serde::{Deserialize, Serialize};
use wmd_core::{Diagnostics, Mode, PathCandidate, PlanResult, Residual, Segment, SegmentKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub kind: char,
    pub measure: f64,
    /// `"rad"` for turns, `"m"` for lines.
    pub measure_unit: String,
}

impl From<&Segment> for SegmentDoc {
    fn from(s: &Segment) -> Self {
        Self {
            kind: s.kind.as_char(),
            measure: s.measure,
            measure_unit: if s.kind == SegmentKind::S { "m" } else { "rad" }.to_string(),
        }
    }
}

impl SegmentDoc {
    pub fn to_segment(&self) -> Option<Segment> {
        Segment::new(SegmentKind::from_char(self.kind)?, self.measure).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateDoc {
    pub family: String,
    pub segments: Vec<SegmentDoc>,
    pub cost: f64,
}

impl From<&PathCandidate> for CandidateDoc {
    fn from(c: &PathCandidate) -> Self {
        Self {
            family: c.family.to_string(),
            segments: c.segments.iter().map(SegmentDoc::from).collect(),
            cost: c.cost,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanDoc {
    pub mode: Mode,
    pub best: Option<CandidateDoc>,
    pub candidates: Vec<CandidateDoc>,
    pub residual: Option<Residual>,
    pub diagnostics: Diagnostics,
}

impl PlanDoc {
    pub fn new(result: &PlanResult, all_candidates: bool) -> Self {
        Self {
            mode: result.mode,
            best: result.best.as_ref().map(CandidateDoc::from),
            candidates: if all_candidates {
                result.all_candidates.iter().map(CandidateDoc::from).collect()
            } else {
                Vec::new()
            },
            residual: result.best.as_ref().map(|b| b.residual),
            diagnostics: result.diagnostics.clone(),
        }
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped.
pub fn fmt_sig(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v == 0.0 || !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v.is_infinite() { format!("{v}") } else { "0".into() };
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..DIGITS).contains(&exp) {
        let s = format!("{:.*e}", (DIGITS - 1) as usize, v);
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mant), e);
    }
    let decimals = (DIGITS - 1 - exp).max(0) as usize;
    let s = trim_zeros(&format!("{v:.decimals$}"));
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}
