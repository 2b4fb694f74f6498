use rayon::prelude::*;

use super::DiskAction;
use crate::error::{Error, Result};
use crate::geometry::polygon::diameter;
use crate::geometry::vec::dist2;

/// Slack on the spacing bound so that an exact division (0.6 in steps of
/// 0.05) is accepted despite rounding.
const SPACING_SLACK: f64 = 1e-9;

const MAX_ROUNDS: usize = 20;

/// Points `x₀ … xₙ` with consecutive distance below `mu` whose orbits
/// strictly increase in the enclosure order.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneChain {
    pub points: Vec<[f64; 2]>,
    /// Level (enclosed orbit area) of each point, strictly increasing.
    pub levels: Vec<f64>,
    pub mu: f64,
    pub diameter: f64,
    /// `4·|x − y| + mu`.
    pub bound: f64,
}

impl MonotoneChain {
    pub fn max_step(&self) -> f64 {
        self.points.windows(2).map(|w| dist2(w[0], w[1])).fold(0.0, f64::max)
    }
}

/// The point on the ray from the fixed point through `p` whose orbit has
/// level `target`, by bisection on the distance along the ray.
pub(crate) fn project_to_level(action: &DiskAction, p: [f64; 2], target: f64) -> [f64; 2] {
    let c = action.center();
    let d = [p[0] - c[0], p[1] - c[1]];
    let len = d[0].hypot(d[1]);
    if len == 0.0 {
        return p;
    }
    let u = [d[0] / len, d[1] / len];
    // distance from c to the unit circle along u
    let b = c[0] * u[0] + c[1] * u[1];
    let s_max = -b + (b * b - (c[0] * c[0] + c[1] * c[1] - 1.0)).max(0.0).sqrt();
    let at = |s: f64| [c[0] + s * u[0], c[1] + s * u[1]];
    let (mut lo, mut hi) = (0.0, s_max);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if action.level(at(mid)) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    at(0.5 * (lo + hi))
}

/// March along the segment `xy`, keep the points whose level already
/// increases, and push stray points radially onto intermediate orbit curves.
/// The segment is subdivided more finely each round until every step is
/// shorter than `mu`.
pub fn monotone_chain(action: &DiskAction, x: [f64; 2], y: [f64; 2], mu: f64) -> Result<MonotoneChain> {
    if !(mu > 0.0) {
        return Err(Error::Precondition(format!("mu = {mu} must be positive")));
    }
    let (lx, ly) = (action.level(x), action.level(y));
    if !(ly - lx > 1e-9 * ly.max(1e-12)) {
        return Err(Error::Precondition(format!(
            "orbit of x (level {lx}) is not strictly inside the orbit of y (level {ly})"
        )));
    }
    let dist = dist2(x, y);
    let base = ((dist / mu) - SPACING_SLACK).ceil().max(1.0) as usize;
    let mut worst_gap = f64::INFINITY;
    for round in 0..MAX_ROUNDS {
        let m = base << round.min(16);
        let raw: Vec<([f64; 2], f64)> = (0..=m)
            .into_par_iter()
            .map(|j| {
                let t = j as f64 / m as f64;
                let p = [x[0] + (y[0] - x[0]) * t, x[1] + (y[1] - x[1]) * t];
                (p, if j == 0 { lx } else if j == m { ly } else { action.level(p) })
            })
            .collect();
        let eta = (ly - lx) * 1e-3 / m as f64;
        let mut targets = vec![lx; m + 1];
        targets[m] = ly;
        for j in 1..m {
            let lo = targets[j - 1] + eta;
            let hi = ly - (m - j) as f64 * eta;
            targets[j] = raw[j].1.clamp(lo, hi);
        }
        let points: Vec<[f64; 2]> = (0..=m)
            .into_par_iter()
            .map(|j| {
                if targets[j] == raw[j].1 {
                    raw[j].0
                } else {
                    project_to_level(action, raw[j].0, targets[j])
                }
            })
            .collect();
        let levels: Vec<f64> = points
            .par_iter()
            .enumerate()
            .map(|(j, &p)| if j == 0 { lx } else if j == m { ly } else { action.level(p) })
            .collect();
        let gap = points.windows(2).map(|w| dist2(w[0], w[1])).fold(0.0, f64::max);
        let increasing = levels.windows(2).all(|w| w[1] > w[0]);
        if gap < mu * (1.0 + SPACING_SLACK) && increasing {
            let diameter = diameter(&points);
            return Ok(MonotoneChain { points, levels, mu, diameter, bound: 4.0 * dist + mu });
        }
        worst_gap = if increasing { gap } else { f64::INFINITY };
    }
    Err(Error::RefinementStall { gap: worst_gap, rounds: MAX_ROUNDS })
}
