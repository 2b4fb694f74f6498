use rayon::prelude::*;

use super::{Metric, SampleGrid};
use crate::error::{Error, Result};
use crate::maps::MapExpr;
use crate::tolerances;

/// Empirical modulus of continuity `φ(ε)` of a family of maps.
///
/// Returns the largest `α` (found by bisection) such that every pair of grid
/// points with `d(x, y) < α` satisfies `d(g x, g y) < ε` for all `g` in the
/// family. When no pair violates the bound at all, the grid diameter is
/// returned.
pub fn modulus_of_continuity(
    family: &[MapExpr],
    epsilon: f64,
    grid: &SampleGrid,
    metric: &Metric,
) -> Result<f64> {
    if family.is_empty() {
        return Err(Error::Precondition("empty family".into()));
    }
    if epsilon <= 0.0 {
        return Err(Error::Precondition(format!("epsilon {epsilon} not positive")));
    }
    let space = grid.space();
    for (k, g) in family.iter().enumerate() {
        let s = g.space()?;
        if s != space {
            return Err(Error::SpaceMismatch { expected: space, found: s });
        }
        let round_trip = MapExpr::compose(g.clone(), g.inverse());
        let bad = grid.points.iter().any(|x| {
            let y = round_trip.eval(x);
            metric.distance(x, &y) > tolerances::ROUND_TRIP
        });
        if bad {
            return Err(Error::DegenerateFamily { member: k });
        }
    }

    let pts = &grid.points;
    let images: Vec<Vec<_>> = family
        .iter()
        .map(|g| pts.iter().map(|x| g.eval(x)).collect())
        .collect();
    let n = pts.len();

    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            diameter = diameter.max(metric.distance(&pts[i], &pts[j]));
        }
    }

    // true iff no pair closer than alpha is stretched to epsilon or more
    let holds = |alpha: f64| -> bool {
        !(0..n).into_par_iter().any(|i| {
            ((i + 1)..n).any(|j| {
                metric.distance(&pts[i], &pts[j]) < alpha
                    && images
                        .iter()
                        .any(|img| metric.distance(&img[i], &img[j]) >= epsilon)
            })
        })
    };

    let mut hi = diameter * (1.0 + 1e-9) + f64::MIN_POSITIVE;
    if holds(hi) {
        return Ok(diameter);
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        if hi - lo <= tolerances::ALGEBRAIC * diameter.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
