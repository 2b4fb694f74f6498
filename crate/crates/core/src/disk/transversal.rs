use rayon::prelude::*;

use super::chain::monotone_chain;
use super::curve::orbit_curve;
use super::DiskAction;
use crate::error::{Error, Result};
use crate::geometry::polygon::{crossing_count, diameter};
use crate::geometry::vec::dist2;
use crate::tolerances::DISK_CELL;

/// A simple arc from the fixed point to the boundary meeting every orbit
/// once, parametrized by `r = sqrt(level / level(x_∞))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransversalArc {
    pub points: Vec<[f64; 2]>,
    /// Parameter of each point, strictly increasing from 0 to 1.
    pub params: Vec<f64>,
    pub center: [f64; 2],
    /// Level of the boundary endpoint; `r = sqrt(level / top_level)`.
    pub top_level: f64,
}

/// `(δₙ, μₙ) = (2⁻ⁿ⁻², 2⁻ⁿ⁻⁴)` until `μₙ` reaches the disk grid cell.
pub fn default_schedule() -> Vec<(f64, f64)> {
    (0..)
        .map(|n| (2f64.powi(-n - 2), 2f64.powi(-n - 4)))
        .take_while(|&(_, mu)| mu >= DISK_CELL)
        .collect()
}

/// Refine monotone chains from the fixed point to `(1, 0)`: level 0 is a
/// chain at spacing `μ₀`; each later level replaces every gap by a chain at
/// spacing `μₙ`, whose diameter must stay below `δₙ₋₁`. Refinement stops once
/// the largest gap is at most one grid cell.
pub fn transversal_arc(action: &DiskAction, schedule: &[(f64, f64)]) -> Result<TransversalArc> {
    let &(_, mu0) = schedule
        .first()
        .ok_or_else(|| Error::Precondition("empty chain schedule".into()))?;
    let center = action.center();
    let far = [1.0, 0.0];
    if dist2(center, far) < 1e-6 {
        return Err(Error::Precondition("fixed point on the boundary".into()));
    }
    let first = monotone_chain(action, center, far, mu0)?;
    let mut points = first.points;
    let mut levels = first.levels;
    for w in schedule.windows(2) {
        let gap = points.windows(2).map(|p| dist2(p[0], p[1])).fold(0.0, f64::max);
        if gap <= DISK_CELL {
            break;
        }
        let ((delta, _), (_, mu)) = (w[0], w[1]);
        let pieces = points
            .par_windows(2)
            .map(|p| {
                let c = monotone_chain(action, p[0], p[1], mu)?;
                let d = diameter(&c.points);
                if d > delta {
                    return Err(Error::RefinementStall { gap: d, rounds: 0 });
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut np = vec![points[0]];
        let mut nl = vec![levels[0]];
        for c in pieces {
            np.extend_from_slice(&c.points[1..]);
            nl.extend_from_slice(&c.levels[1..]);
        }
        points = np;
        levels = nl;
    }
    let top = *levels.last().unwrap_or(&1.0);
    // the fixed point's orbit is degenerate: level 0 by definition
    levels[0] = 0.0;
    let params = levels.iter().map(|l| (l / top).max(0.0).sqrt()).collect();
    Ok(TransversalArc { points, params, center, top_level: top })
}

impl TransversalArc {
    /// `x(r)`, linear between arc vertices.
    pub fn at(&self, r: f64) -> [f64; 2] {
        let r = r.clamp(0.0, 1.0);
        let k = self.params.partition_point(|&p| p <= r).clamp(1, self.params.len() - 1);
        let (a, b) = (self.params[k - 1], self.params[k]);
        let w = if b > a { (r - a) / (b - a) } else { 0.0 };
        let (p, q) = (self.points[k - 1], self.points[k]);
        [p[0] + w * (q[0] - p[0]), p[1] + w * (q[1] - p[1])]
    }

    pub fn max_gap(&self) -> f64 {
        self.points.windows(2).map(|p| dist2(p[0], p[1])).fold(0.0, f64::max)
    }

    /// Crossings of the arc with `n` orbit curves based at `Ψ_{0.37}(x(r_k))`,
    /// `r_k = (k + ½)/n`.
    pub fn crossing_counts(&self, action: &DiskAction, n: usize, samples: usize) -> Result<Vec<usize>> {
        (0..n)
            .into_par_iter()
            .map(|k| {
                let r = (k as f64 + 0.5) / n as f64;
                let base = action.act(0.37, self.at(r));
                let curve = orbit_curve(action, base, samples)?;
                Ok(crossing_count(&self.points, &curve.points))
            })
            .collect()
    }
}
