use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::winding::{bisect_zero, Rect};
use crate::geometry::{vec, SampleGrid, Space};
use crate::maps::MapExpr;
use crate::tolerances;

pub(crate) fn require_sphere(f: &MapExpr) -> Result<()> {
    match f.space()? {
        Space::Sphere => Ok(()),
        found => Err(Error::SpaceMismatch { expected: Space::Sphere, found }),
    }
}

/// Pattern search for a local extremum of `value` on the sphere, started at
/// `start` with initial tangent step `step`.
pub(crate) fn refine_extremum<F>(value: &F, start: [f64; 3], step: f64, maximize: bool) -> ([f64; 3], f64)
where
    F: Fn([f64; 3]) -> f64,
{
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };
    let mut x = start;
    let mut vx = value(x);
    let mut h = step;
    const DIRS: [[f64; 2]; 8] = [
        [1.0, 0.0],
        [-1.0, 0.0],
        [0.0, 1.0],
        [0.0, -1.0],
        [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        [-FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        [FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
        [-FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ];
    // cap the moves: along a curve of minima rounding noise keeps "improving"
    for _ in 0..4000 {
        if h <= 1e-11 {
            break;
        }
        let frame = vec::tangent_frame(x);
        let best = DIRS
            .iter()
            .map(|d| {
                let y = vec::gnomonic_inverse(x, frame, [h * d[0], h * d[1]]);
                (y, value(y))
            })
            .reduce(|a, b| if better(b.1, a.1) { b } else { a });
        match best {
            Some((y, vy)) if better(vy, vx) => {
                x = y;
                vx = vy;
            }
            _ => h /= 2.0,
        }
    }
    (x, vx)
}

/// Levenberg–Marquardt descent of `|f(x) - x|` from `start`; converges to
/// a point of a fixed curve as well as to an isolated minimum.
pub(crate) fn minimize_displacement(f: &MapExpr, start: [f64; 3]) -> ([f64; 3], f64) {
    let residual = |x: [f64; 3]| vec::sub(f.eval_sphere(x), x);
    let mut x = start;
    let mut r = residual(x);
    let mut lambda = 1e-3;
    for _ in 0..200 {
        let rn = vec::norm(r);
        if rn < 1e-15 || lambda > 1e12 {
            break;
        }
        let frame = vec::tangent_frame(x);
        let h = 1e-7;
        let cols = [[h, 0.0], [0.0, h]].map(|q| vec::scale(vec::sub(residual(vec::gnomonic_inverse(x, frame, q)), r), 1.0 / h));
        let a = [
            [vec::dot(cols[0], cols[0]), vec::dot(cols[0], cols[1])],
            [vec::dot(cols[1], cols[0]), vec::dot(cols[1], cols[1])],
        ];
        let g = [vec::dot(cols[0], r), vec::dot(cols[1], r)];
        let scale = a[0][0].max(a[1][1]).max(1e-300);
        let m = [[a[0][0] + lambda * scale, a[0][1]], [a[1][0], a[1][1] + lambda * scale]];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let dq = [-(m[1][1] * g[0] - m[0][1] * g[1]) / det, -(-m[1][0] * g[0] + m[0][0] * g[1]) / det];
        let y = vec::gnomonic_inverse(x, frame, dq);
        let ry = residual(y);
        if vec::norm(ry) < rn {
            x = y;
            r = ry;
            lambda = (lambda / 10.0).max(1e-12);
        } else {
            lambda *= 10.0;
        }
    }
    (x, vec::norm(r))
}

/// Grid points with the smallest `key`, no two within chordal `separation`.
pub(crate) fn spread_minima(points: &[[f64; 3]], key: &[f64], separation: f64, count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| key[a].total_cmp(&key[b]));
    let mut picked: Vec<usize> = Vec::new();
    for i in order {
        if picked.len() == count {
            break;
        }
        if picked.iter().all(|&j| vec::dist3(points[i], points[j]) > separation) {
            picked.push(i);
        }
    }
    picked
}

/// The two fixed points of an orientation-preserving sphere map other than
/// the identity.
///
/// Candidates are the well-separated minima of the displacement on a coarse
/// grid; around each, winding-number bisection in a gnomonic chart certifies
/// and localizes a zero of the tangential displacement field.
pub fn fixed_point_pair(f: &MapExpr) -> Result<([f64; 3], [f64; 3])> {
    require_sphere(f)?;
    if f.orientation() < 0 {
        return Err(Error::Precondition(
            "orientation-reversing map has no fixed-point pair".into(),
        ));
    }
    let grid = SampleGrid::sphere(4001);
    let points: Vec<[f64; 3]> = grid.points.iter().filter_map(|p| p.as_sphere()).collect();
    let disp: Vec<f64> = points
        .par_iter()
        .map(|&x| vec::dist3(f.eval_sphere(x), x))
        .collect();
    let max = disp.iter().cloned().fold(0.0, f64::max);
    if max < 1e-9 {
        return Err(Error::Precondition("map is the identity on the grid".into()));
    }
    let candidates = spread_minima(&points, &disp, 0.3, 8);
    let mut found: Vec<[f64; 3]> = Vec::new();
    for c in candidates {
        let Some(z) = chart_zero(f, points[c]) else { continue };
        if found.iter().all(|&q| vec::dist3(q, z) > tolerances::DEDUP) {
            found.push(z);
        }
    }
    match found.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::FixedPointCountMismatch { found: found.len() }),
    }
}

/// A certified zero of `f(x) - x` in the gnomonic chart around `c`.
fn chart_zero(f: &MapExpr, c: [f64; 3]) -> Option<[f64; 3]> {
    let frame = vec::tangent_frame(c);
    let field = |q: [f64; 2]| {
        let x = vec::gnomonic_inverse(c, frame, q);
        let d = vec::sub(f.eval_sphere(x), x);
        [vec::dot(frame.0, d), vec::dot(frame.1, d)]
    };
    const HALF: f64 = 0.25;
    let root = Rect::square([0.0123 * HALF, -0.0087 * HALF], HALF);
    let loc = bisect_zero(&field, root, 1e-12, 0.0).ok()?;
    let x = polish(&field, loc.point);
    let x = vec::gnomonic_inverse(c, frame, x);
    (vec::dist3(f.eval_sphere(x), x) <= 1e-9).then_some(x)
}

/// Finite-difference Newton steps, kept while the residual decreases.
fn polish<F>(field: &F, mut q: [f64; 2]) -> [f64; 2]
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let norm = |v: [f64; 2]| v[0].hypot(v[1]);
    let mut r = field(q);
    for _ in 0..8 {
        let h = 1e-7;
        let fx = field([q[0] + h, q[1]]);
        let fy = field([q[0], q[1] + h]);
        let j = [
            [(fx[0] - r[0]) / h, (fy[0] - r[0]) / h],
            [(fx[1] - r[1]) / h, (fy[1] - r[1]) / h],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            break;
        }
        let dq = [
            (j[1][1] * r[0] - j[0][1] * r[1]) / det,
            (-j[1][0] * r[0] + j[0][0] * r[1]) / det,
        ];
        let next = [q[0] - dq[0], q[1] - dq[1]];
        let rn = field(next);
        if norm(rn) >= norm(r) {
            break;
        }
        q = next;
        r = rn;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_fixes_its_poles() {
        let f = MapExpr::sphere_rotation([0.0, 0.0, 1.0], 0.7).unwrap();
        let (a, b) = fixed_point_pair(&f).unwrap();
        let (n, s) = if a[2] > 0.0 { (a, b) } else { (b, a) };
        assert!(vec::dist3(n, [0.0, 0.0, 1.0]) < 1e-9);
        assert!(vec::dist3(s, [0.0, 0.0, -1.0]) < 1e-9);
    }

    #[test]
    fn conjugated_rotation_fixes_the_transported_poles() {
        let g = MapExpr::stereo(MapExpr::aniso_warp(1.3, 0.2).unwrap()).unwrap();
        let axis = vec::normalize([0.3, -0.2, 1.0]);
        let r = MapExpr::sphere_rotation(axis, 2.0).unwrap();
        let f = MapExpr::conj(g.clone(), r);
        let (a, b) = fixed_point_pair(&f).unwrap();
        let p = g.eval_sphere(axis);
        let q = g.eval_sphere(vec::scale(axis, -1.0));
        let d = vec::dist3(a, p).min(vec::dist3(b, p));
        let e = vec::dist3(a, q).min(vec::dist3(b, q));
        assert!(d < 1e-6 && e < 1e-6, "{d} {e}");
    }

    #[test]
    fn reversing_maps_are_rejected() {
        assert!(matches!(
            fixed_point_pair(&MapExpr::antipodal()),
            Err(Error::Precondition(_))
        ));
    }
}
