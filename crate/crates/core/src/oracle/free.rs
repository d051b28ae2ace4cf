//! Unconstrained segment solver.
//!
//! Every measure of the word is a free non-negative unknown. The last three
//! segments are closed in closed form from wherever the leading segments end,
//! so a word of length `n > 3` reduces to minimizing cost over its first
//! `n - 3` measures: a dense grid locates the basins and Nelder-Mead refines
//! them.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::connect::{connect, connect_canonical};
use crate::error::{invalid, Result};
use crate::kinematics::propagate_path;
use crate::model::{path_cost, Configuration, Segment, SegmentKind, VehicleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeOptions {
    /// Grid points per free measure for four-segment words.
    pub grid_1d: usize,
    /// Grid points per free measure for five-segment words.
    pub grid_2d: usize,
    /// Grid basins refined per word.
    pub starts: usize,
    pub max_iters: usize,
}

impl Default for FreeOptions {
    fn default() -> Self {
        Self {
            grid_1d: 720,
            grid_2d: 120,
            starts: 8,
            max_iters: 600,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeSolution {
    pub sequence: String,
    pub cost: f64,
    pub segments: Vec<Segment>,
}

fn kinds_of(sequence: &str) -> Result<Vec<SegmentKind>> {
    let kinds: Option<Vec<SegmentKind>> = sequence.chars().map(SegmentKind::from_char).collect();
    let kinds = kinds.ok_or_else(|| invalid(format!("bad sequence {sequence:?}")))?;
    if kinds.is_empty() || kinds.len() > 6 || kinds.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid(format!("bad sequence {sequence:?}")));
    }
    Ok(kinds)
}

/// Cheapest closed-form path over all words of length at most three. Always
/// finite: `LSL` connects any pair of configurations.
fn short_word_bound(local: &Configuration, spec: &VehicleSpec) -> f64 {
    super::enumerate_sequences(3)
        .unwrap_or_default()
        .iter()
        .filter_map(|w| connect_canonical(w, local, spec))
        .flatten()
        .map(|p| path_cost(&p, spec))
        .fold(f64::INFINITY, f64::min)
}

struct Problem<'a> {
    kinds: &'a [SegmentKind],
    tail: String,
    local: Configuration,
    spec: &'a VehicleSpec,
    /// Upper bound on each leading measure.
    bounds: Vec<f64>,
}

impl Problem<'_> {
    fn lead(&self, x: &[f64]) -> Vec<Segment> {
        self.kinds
            .iter()
            .zip(x)
            .map(|(&kind, &m)| Segment { kind, measure: m })
            .collect()
    }

    /// Cheapest completion for the given leading measures.
    fn best(&self, x: &[f64]) -> Option<(f64, Vec<Segment>)> {
        if x.iter().zip(&self.bounds).any(|(&v, &b)| !(0.0..=b).contains(&v)) {
            return None;
        }
        let lead = self.lead(x);
        let mid = propagate_path(&Configuration::origin(), &lead, self.spec);
        let lead_cost = path_cost(&lead, self.spec);
        connect(&self.tail, &mid, &self.local, self.spec)?
            .into_iter()
            .map(|tail| {
                let c = lead_cost + path_cost(&tail, self.spec);
                let mut segs = lead.clone();
                segs.extend(tail);
                (c, segs)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }

    fn f(&self, x: &[f64]) -> f64 {
        self.best(x).map_or(f64::INFINITY, |b| b.0)
    }
}

/// Nelder-Mead from `x0` with initial step `h` per coordinate.
fn nelder_mead(p: &Problem, x0: &[f64], h: &[f64], max_iters: usize) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), p.f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += h[i];
        if p.f(&x).is_infinite() {
            x[i] = x0[i] - h[i];
        }
        let fx = p.f(&x);
        simplex.push((x, fx));
    }
    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[n].1);
        let size = simplex
            .iter()
            .skip(1)
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if size < 1e-11 || (worst.is_finite() && worst - best <= 1e-15 * best.abs().max(1.0) && size < 1e-7) {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|(x, _)| x[i]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = p.f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = p.f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let xc = if fr < simplex[n].1 { along(-0.5) } else { along(0.5) };
            let fc = p.f(&xc);
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let x0 = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = v.0.iter().zip(&x0).map(|(a, b)| b + 0.5 * (a - b)).collect();
                    *v = (x.clone(), p.f(&x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Grid points that are no worse than any of their grid neighbours.
fn grid_minima(values: &[f64], dims: &[usize]) -> Vec<usize> {
    let idx = |c: &[usize]| c.iter().zip(dims).fold(0, |acc, (&ci, &d)| acc * d + ci);
    let mut out = Vec::new();
    let total: usize = dims.iter().product();
    for flat in 0..total {
        let v = values[flat];
        if !v.is_finite() {
            continue;
        }
        let mut coords = vec![0; dims.len()];
        let mut rem = flat;
        for (k, &d) in dims.iter().enumerate().rev() {
            coords[k] = rem % d;
            rem /= d;
        }
        let mut is_min = true;
        for k in 0..dims.len() {
            for delta in [-1i64, 1] {
                let ck = coords[k] as i64 + delta;
                if ck < 0 || ck >= dims[k] as i64 {
                    continue;
                }
                let mut nb = coords.clone();
                nb[k] = ck as usize;
                let nv = values[idx(&nb)];
                if nv < v {
                    is_min = false;
                }
            }
        }
        if is_min {
            out.push(flat);
        }
    }
    out
}

/// Cheapest path with the given segment-kind sequence, every measure free.
pub fn free_structure_solve(
    sequence: &str,
    start: &Configuration,
    goal: &Configuration,
    spec: &VehicleSpec,
    opts: &FreeOptions,
) -> Result<Option<FreeSolution>> {
    let kinds = kinds_of(sequence)?;
    spec.validate()?;
    let local = start.relative(goal);
    let finish = |cost: f64, segments: Vec<Segment>| FreeSolution {
        sequence: sequence.to_string(),
        cost,
        segments,
    };
    if kinds.len() <= 3 {
        let best = connect_canonical(sequence, &local, spec)
            .unwrap_or_default()
            .into_iter()
            .map(|p| (path_cost(&p, spec), p))
            .min_by(|a, b| a.0.total_cmp(&b.0));
        return Ok(best.map(|(c, p)| finish(c, p)));
    }
    let upper = short_word_bound(&local, spec);
    let bounds: Vec<f64> = kinds[..kinds.len() - 3]
        .iter()
        .map(|&k| match spec.radius(k) {
            Some(_) => (upper / spec.cost_rate(k)).min(TAU - 1e-12),
            None => upper,
        })
        .collect();
    let tail: String = kinds[kinds.len() - 3..].iter().map(|k| k.as_char()).collect();
    let problem = Problem {
        kinds: &kinds,
        tail,
        local,
        spec,
        bounds: bounds.clone(),
    };

    let n_free = bounds.len();
    let per_dim = match n_free {
        1 => opts.grid_1d,
        2 => opts.grid_2d,
        _ => (opts.grid_2d as f64).powf(2.0 / n_free as f64).ceil() as usize,
    }
    .max(4);
    let steps: Vec<f64> = bounds.iter().map(|b| b / (per_dim - 1) as f64).collect();
    let dims = vec![per_dim; n_free];
    let total: usize = dims.iter().product();
    let point = |flat: usize| -> Vec<f64> {
        let mut rem = flat;
        let mut x = vec![0.0; n_free];
        for k in (0..n_free).rev() {
            x[k] = (rem % per_dim) as f64 * steps[k];
            rem /= per_dim;
        }
        x
    };
    let values: Vec<f64> = (0..total).map(|i| problem.f(&point(i))).collect();
    let mut seeds = grid_minima(&values, &dims);
    seeds.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    seeds.truncate(opts.starts);

    let mut best: Option<(f64, Vec<Segment>)> = None;
    for seed in seeds {
        let mut x = point(seed);
        let mut h: Vec<f64> = steps.iter().map(|s| 0.5 * s).collect();
        let mut fx = values[seed];
        // restarts shake Nelder-Mead out of premature collapse
        for _ in 0..3 {
            let (xn, fnew) = nelder_mead(&problem, &x, &h, opts.max_iters);
            let done = fnew >= fx - 1e-14 * fx.abs().max(1.0);
            if fnew <= fx {
                x = xn;
                fx = fnew;
            }
            if done {
                break;
            }
            h.iter_mut().for_each(|v| *v *= 0.1);
        }
        if let Some((c, segs)) = problem.best(&x) {
            if best.as_ref().map_or(true, |b| c < b.0) {
                best = Some((c, segs));
            }
        }
    }
    Ok(best.map(|(c, p)| finish(c, p)))
}
