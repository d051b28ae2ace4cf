//! Best-first search over quantized motion primitives.
//!
//! States carry exact continuous poses and are deduplicated on an
//! `(x, y, heading)` grid. Every expanded state also tries a direct
//! closed-form connection to the goal, so whatever the search returns is a
//! real path and its cost an upper bound on the optimum.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::classical::best_word;
use crate::error::{invalid, Result};
use crate::kinematics::{propagate_segment, sample_path};
use crate::model::{path_cost, wrap_pi, Configuration, Segment, SegmentKind, VehicleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeOptions {
    pub heading_bins: usize,
    pub xy_resolution: f64,
    /// Turn angle of one arc primitive, rad.
    pub arc_quantum: f64,
    /// Length of one line primitive, m.
    pub line_quantum: f64,
    /// Margin added around the start/goal bounding box, m.
    pub box_margin: f64,
    pub max_expansions: usize,
    /// Try a closed-form connection to the goal from every expanded state.
    pub analytic_expansion: bool,
    pub cost_slack_rel: f64,
    pub cost_slack_abs: f64,
}

impl LatticeOptions {
    /// Defaults scaled to the vehicle.
    pub fn for_spec(spec: &VehicleSpec) -> Self {
        let r = spec.r_min();
        Self {
            heading_bins: 72,
            xy_resolution: 0.05 * r,
            arc_quantum: 5f64.to_radians(),
            line_quantum: 0.05 * r,
            box_margin: 4.0 * (spec.r_l + spec.r_r),
            max_expansions: 60_000,
            analytic_expansion: true,
            cost_slack_rel: 0.03,
            cost_slack_abs: 0.1,
        }
    }

    /// Every quantum divided by `k`.
    pub fn refined(&self, k: usize) -> Self {
        let kf = k as f64;
        Self {
            heading_bins: self.heading_bins * k,
            xy_resolution: self.xy_resolution / kf,
            arc_quantum: self.arc_quantum / kf,
            line_quantum: self.line_quantum / kf,
            max_expansions: self.max_expansions * k,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.xy_resolution,
            self.arc_quantum,
            self.line_quantum,
            self.cost_slack_rel,
            self.cost_slack_abs,
        ]
        .iter()
        .all(|v| *v > 0.0 && v.is_finite());
        if !positive || self.box_margin < 0.0 || self.max_expansions == 0 {
            return Err(invalid("lattice options must be positive"));
        }
        if self.heading_bins < 36 {
            return Err(invalid("heading_bins must be at least 36"));
        }
        Ok(())
    }

    /// Allowed excess of the planner cost over a lattice cost.
    pub fn slack(&self, lattice_cost: f64) -> f64 {
        self.cost_slack_rel * lattice_cost + self.cost_slack_abs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticePath {
    pub cost: f64,
    pub segments: Vec<Segment>,
    pub expansions: usize,
}

struct Node {
    pose: Configuration,
    g: f64,
    /// Heuristic at this pose, once computed.
    h: Option<f64>,
    parent: usize,
    step: Option<Segment>,
}

#[derive(PartialEq)]
struct Entry {
    f: f64,
    seq: u64,
    node: usize,
    goal: bool,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.f.total_cmp(&self.f).then(other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Bounds {
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Bounds {
    fn contains(&self, p: (f64, f64)) -> bool {
        p.0 >= self.lo.0 && p.0 <= self.hi.0 && p.1 >= self.lo.1 && p.1 <= self.hi.1
    }
}

fn merge(segments: impl IntoIterator<Item = Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for s in segments {
        if s.measure == 0.0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.kind == s.kind => last.measure += s.measure,
            _ => out.push(s),
        }
    }
    // merged arcs may wrap past a full turn; drop the loop
    for s in &mut out {
        if s.kind.is_turn() {
            s.measure = s.measure.rem_euclid(TAU);
        }
    }
    out
}

/// Walks back from `node` and appends its recorded goal connection.
fn finish(
    nodes: &[Node],
    node: usize,
    shots: &mut HashMap<usize, Vec<Segment>>,
    spec: &VehicleSpec,
    expansions: usize,
) -> LatticePath {
    let mut steps = Vec::new();
    let mut i = node;
    while let Some(step) = nodes[i].step {
        steps.push(step);
        i = nodes[i].parent;
    }
    steps.reverse();
    steps.extend(shots.remove(&node).unwrap_or_default());
    let segments = merge(steps);
    LatticePath {
        cost: path_cost(&segments, spec),
        segments,
        expansions,
    }
}

/// Searches the primitive lattice from `start` to `goal`. Returns `None` when
/// the state box or expansion budget is exhausted without reaching the goal.
pub fn lattice_search(
    start: &Configuration,
    goal: &Configuration,
    spec: &VehicleSpec,
    lopts: &LatticeOptions,
) -> Result<Option<LatticePath>> {
    lopts.validate()?;
    spec.validate()?;
    let m = lopts.box_margin;
    let bounds = Bounds {
        lo: (start.x.min(goal.x) - m, start.y.min(goal.y) - m),
        hi: (start.x.max(goal.x) + m, start.y.max(goal.y) + m),
    };
    let bin = TAU / lopts.heading_bins as f64;
    let key = |c: &Configuration| -> (i64, i64, i64) {
        let h = (c.heading - start.heading).rem_euclid(TAU);
        (
            (c.x / lopts.xy_resolution).floor() as i64,
            (c.y / lopts.xy_resolution).floor() as i64,
            ((h / bin).round() as i64).rem_euclid(lopts.heading_bins as i64),
        )
    };
    let r = spec.r_min();
    let lower_spec = VehicleSpec {
        r_l: r,
        r_r: r,
        mu_l: 0.0,
        mu_r: 0.0,
    };
    let mu_min = spec.mu_l.min(spec.mu_r);
    // shortest curvature-bounded length plus the least penalty for the net turn
    let heuristic = |c: &Configuration| -> f64 {
        let len = best_word(c, goal, &lower_spec).map_or(0.0, |p| p.cost);
        len + mu_min * wrap_pi(goal.heading - c.heading).abs()
    };
    let in_box = |from: &Configuration, segs: &[Segment]| -> bool {
        sample_path(from, segs, spec, lopts.xy_resolution)
            .map(|p| p.points.iter().all(|&q| bounds.contains(q)))
            .unwrap_or(false)
    };

    let mut nodes = vec![Node {
        pose: *start,
        g: 0.0,
        h: None,
        parent: usize::MAX,
        step: None,
    }];
    let mut shots: HashMap<usize, Vec<Segment>> = HashMap::new();
    let mut closed: HashSet<(i64, i64, i64)> = HashSet::new();
    let mut open = BinaryHeap::new();
    let mut seq = 0u64;
    let mut best_goal = f64::INFINITY;
    let mut best_node = None;
    if !bounds.contains((start.x, start.y)) || !bounds.contains((goal.x, goal.y)) {
        return Ok(None);
    }
    open.push(Entry {
        f: heuristic(start),
        seq,
        node: 0,
        goal: false,
    });
    let mut expansions = 0;
    let primitives = [
        Segment::left(lopts.arc_quantum),
        Segment::right(lopts.arc_quantum),
        Segment::straight(lopts.line_quantum),
    ];

    while let Some(e) = open.pop() {
        if e.goal {
            return Ok(Some(finish(&nodes, e.node, &mut shots, spec, expansions)));
        }
        let k = key(&nodes[e.node].pose);
        if closed.contains(&k) {
            continue;
        }
        // children are queued with a bound derived from the parent; the
        // exact heuristic is only computed once the node reaches the front
        if nodes[e.node].h.is_none() {
            let h = heuristic(&nodes[e.node].pose);
            nodes[e.node].h = Some(h);
            let f = nodes[e.node].g + h;
            if f > e.f + 1e-12 {
                if f < best_goal {
                    seq += 1;
                    open.push(Entry {
                        f,
                        seq,
                        node: e.node,
                        goal: false,
                    });
                }
                continue;
            }
        }
        closed.insert(k);
        expansions += 1;
        if expansions > lopts.max_expansions {
            break;
        }
        let pose = nodes[e.node].pose;
        let g = nodes[e.node].g;
        let h = nodes[e.node].h.unwrap_or(0.0);

        if lopts.analytic_expansion {
            if let Some(shot) = best_word(&pose, goal, spec) {
                let f = g + shot.cost;
                if f < best_goal && in_box(&pose, &shot.segments) {
                    best_goal = f;
                    best_node = Some(e.node);
                    shots.insert(e.node, shot.segments);
                    seq += 1;
                    open.push(Entry {
                        f,
                        seq,
                        node: e.node,
                        goal: true,
                    });
                }
            }
        } else {
            let close = pose.distance_to(goal) <= 1.5 * lopts.xy_resolution
                && wrap_pi(goal.heading - pose.heading).abs() <= 0.5 * bin + 1e-12;
            if close && g < best_goal {
                best_goal = g;
                best_node = Some(e.node);
                seq += 1;
                open.push(Entry {
                    f: g,
                    seq,
                    node: e.node,
                    goal: true,
                });
            }
        }

        for prim in &primitives {
            let mut next = propagate_segment(&pose, prim, spec);
            let mut step = *prim;
            if prim.kind == SegmentKind::S {
                // lines run until they leave the current cell
                while key(&next) == k && step.measure < 8.0 * lopts.line_quantum {
                    step.measure += lopts.line_quantum;
                    next = propagate_segment(&pose, &step, spec);
                }
            }
            if !bounds.contains((next.x, next.y)) {
                continue;
            }
            let nk = key(&next);
            if closed.contains(&nk) {
                continue;
            }
            let step_cost = path_cost(&[step], spec);
            let g2 = g + step_cost;
            // the heuristic is consistent, so it drops by at most the step cost
            let f2 = g2 + (h - step_cost).max(0.0);
            if f2 >= best_goal {
                continue;
            }
            nodes.push(Node {
                pose: next,
                g: g2,
                h: None,
                parent: e.node,
                step: Some(step),
            });
            seq += 1;
            open.push(Entry {
                f: f2,
                seq,
                node: nodes.len() - 1,
                goal: false,
            });
        }
    }
    // budget exhausted: the best connection found so far is still a valid path
    if let Some(node) = best_node {
        return Ok(Some(finish(&nodes, node, &mut shots, spec, expansions)));
    }
    Ok(None)
}
