use std::f64::consts::FRAC_PI_2;
use std::fmt;

use rayon::prelude::*;

use super::fixed::{minimize_displacement, refine_extremum, require_sphere, spread_minima};
use crate::error::{Error, Result};
use crate::geometry::{vec, SampleGrid};
use crate::maps::MapExpr;
use crate::tolerances;

/// Chordal distance converted to geodesic distance in quarter turns.
pub fn normalized_from_chordal(c: f64) -> f64 {
    2.0 * (c / 2.0).clamp(0.0, 1.0).asin() / FRAC_PI_2
}

/// Displacement bounds of a periodic sphere map.
#[derive(Debug, Clone, PartialEq)]
pub struct NewmanReport {
    pub period: u32,
    /// `d(f, Id)` in the normalized geodesic metric.
    pub d1: f64,
    pub d1_chordal: f64,
    /// `max_r d(f^r, Id)` over `0 < r < p`, normalized.
    pub max_r: f64,
    pub max_r_chordal: f64,
    /// The iterate attaining `max_r`.
    pub worst_r: u32,
    /// `d(f, Id) > 2/p`.
    pub bound_2_over_p_ok: bool,
    /// `max_r d(f^r, Id) > 1`.
    pub bound_unit_ok: bool,
}

/// Check both displacement inequalities for a map of period `p`.
///
/// Suprema are taken over the grid and then polished by a local search from
/// the best grid points, so closed forms are matched far below grid spacing.
pub fn newman_check(f: &MapExpr, p: u32, grid: &SampleGrid) -> Result<NewmanReport> {
    require_sphere(f)?;
    if p < 2 {
        return Err(Error::Precondition(format!("period {p} must exceed 1")));
    }
    let points: Vec<[f64; 3]> = grid.points.iter().filter_map(|q| q.as_sphere()).collect();
    if points.is_empty() {
        return Err(Error::Precondition("grid has no sphere points".into()));
    }
    let p = p as usize;
    // disp[i][r-1] = |f^r(x_i) - x_i|, r = 1..=p
    let disp: Vec<Vec<f64>> = points
        .par_iter()
        .map(|&x| {
            let mut y = x;
            (0..p)
                .map(|_| {
                    y = f.eval_sphere(y);
                    vec::dist3(y, x)
                })
                .collect()
        })
        .collect();
    let defect = disp.iter().map(|d| d[p - 1]).fold(0.0, f64::max);
    if defect > tolerances::GEOMETRIC {
        return Err(Error::NotPeriodic { period: p as u32, defect });
    }

    let sup = |r: usize| -> f64 {
        let fr = f.power(r as i64);
        let neg: Vec<f64> = disp.iter().map(|d| -d[r - 1]).collect();
        let value = |x: [f64; 3]| vec::dist3(fr.eval_sphere(x), x);
        spread_minima(&points, &neg, 0.2, 4)
            .into_iter()
            .map(|i| refine_extremum(&value, points[i], 0.05, true).1)
            .fold(-neg.iter().cloned().fold(f64::INFINITY, f64::min), f64::max)
    };
    let d1_chordal = sup(1);
    let (worst_r, max_r_chordal) = (1..p)
        .map(|r| (r, if r == 1 { d1_chordal } else { sup(r) }))
        .fold((1, 0.0), |acc, (r, d)| if d > acc.1 { (r, d) } else { acc });
    let d1 = normalized_from_chordal(d1_chordal);
    let max_r = normalized_from_chordal(max_r_chordal);
    Ok(NewmanReport {
        period: p as u32,
        d1,
        d1_chordal,
        max_r,
        max_r_chordal,
        worst_r: worst_r as u32,
        bound_2_over_p_ok: d1 > 2.0 / p as f64,
        bound_unit_ok: max_r > 1.0,
    })
}

/// The two conjugacy types of orientation-reversing involutions of the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionType {
    /// Fixes a simple closed curve, like a reflection in a plane.
    Reflection,
    /// Fixed-point free, like `x ↦ -x`.
    AntipodalType,
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionType::Reflection => "reflection",
            InvolutionType::AntipodalType => "antipodal_type",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionReport {
    pub kind: InvolutionType,
    /// Smallest chordal displacement found.
    pub min_displacement: f64,
    /// Where it was attained.
    pub witness: [f64; 3],
}

/// Decide whether an orientation-reversing involution has fixed points.
pub fn classify_involution(s: &MapExpr, grid: &SampleGrid) -> Result<InvolutionReport> {
    require_sphere(s)?;
    if s.orientation() > 0 {
        return Err(Error::Precondition("involution must reverse orientation".into()));
    }
    let points: Vec<[f64; 3]> = grid.points.iter().filter_map(|q| q.as_sphere()).collect();
    if points.is_empty() {
        return Err(Error::Precondition("grid has no sphere points".into()));
    }
    let pairs: Vec<(f64, f64)> = points
        .par_iter()
        .map(|&x| {
            let y = s.eval_sphere(x);
            (vec::dist3(y, x), vec::dist3(s.eval_sphere(y), x))
        })
        .collect();
    let defect = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
    if defect > tolerances::GEOMETRIC {
        return Err(Error::NotPeriodic { period: 2, defect });
    }
    let disp: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let (witness, min_displacement) = spread_minima(&points, &disp, 0.2, 8)
        .into_iter()
        .map(|i| minimize_displacement(s, points[i]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((points[0], disp[0]));
    let kind = if min_displacement <= tolerances::GEOMETRIC {
        InvolutionType::Reflection
    } else if min_displacement >= tolerances::FREE_DISPLACEMENT {
        InvolutionType::AntipodalType
    } else {
        return Err(Error::Inconclusive { min_displacement });
    };
    Ok(InvolutionReport { kind, min_displacement, witness })
}
