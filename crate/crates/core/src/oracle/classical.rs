//! Reference shortest paths for the unweighted vehicle.

use serde::{Deserialize, Serialize};

use super::connect::connect;
use crate::error::{invalid, Result};
use crate::model::{path_cost, Configuration, Segment, VehicleSpec};

pub const DUBINS_WORDS: [&str; 6] = ["LSL", "RSR", "LSR", "RSL", "LRL", "RLR"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferencePath {
    pub word: String,
    pub cost: f64,
    pub segments: Vec<Segment>,
}

/// Cheapest of the six classical words under `spec`'s own cost rates.
pub(crate) fn best_word(
    start: &Configuration,
    goal: &Configuration,
    spec: &VehicleSpec,
) -> Option<ReferencePath> {
    let mut best: Option<ReferencePath> = None;
    for word in DUBINS_WORDS {
        for segs in connect(word, start, goal, spec).unwrap_or_default() {
            let cost = path_cost(&segs, spec);
            if best.as_ref().map_or(true, |b| cost < b.cost) {
                best = Some(ReferencePath {
                    word: word.to_string(),
                    cost,
                    segments: segs,
                });
            }
        }
    }
    best
}

/// Shortest path with left radius `r_l` and right radius `r_r`, minimized
/// over the six classical words.
pub fn classical_dubins(
    start: &Configuration,
    goal: &Configuration,
    r_l: f64,
    r_r: f64,
) -> Result<ReferencePath> {
    let spec = VehicleSpec::new(r_l, r_r, 0.0, 0.0)?;
    best_word(start, goal, &spec).ok_or_else(|| invalid("no classical word connects the pair"))
}
