use crate::error::{Error, Result};
use crate::geometry::winding::{bisect_zero, BisectionFailure, Rect};
use crate::geometry::{clamp_disk, vec, SampleGrid, Space, SurfacePoint};
use crate::maps::MapExpr;
use crate::tolerances::FIXED_POINT_CELL;

/// A fixed point certified by winding-number bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub point: [f64; 2],
    /// Winding of the displacement around the whole disk.
    pub winding: i64,
    /// Bisection depth reached.
    pub levels: usize,
    /// Times a sibling cell also carried nonzero winding; 0 for a unique
    /// fixed point.
    pub sibling_hits: usize,
}

/// The root square slightly exceeds the disk, so its boundary lies where the
/// retracted map cannot reach. Its center is off the coordinate axes so that
/// symmetric fixed points (on an axis, at the origin) never sit on a split
/// line.
const ROOT_CENTER: [f64; 2] = [0.012_345_678, -0.008_765_432];
const ROOT_HALF: f64 = 1.0226;

/// Locate the interior fixed point of a disk homeomorphism.
///
/// The field is `x ↦ f(r(x)) − x` with `r` the radial retraction onto the
/// disk; its zeros are exactly the fixed points of `f`, and on the boundary
/// of the root square it points inward, so the total winding is 1.
pub fn find_fixed_point(f: &MapExpr) -> Result<FixedPoint> {
    let space = f.space()?;
    if space != Space::Disk {
        return Err(Error::SpaceMismatch { expected: Space::Disk, found: space });
    }
    if f.orientation() < 0 {
        return Err(Error::Precondition("orientation-reversing disk map".into()));
    }
    let probe = SampleGrid::disk(8);
    let max_disp = probe
        .points
        .iter()
        .map(|p| {
            let x = p.as_disk().unwrap_or([0.0, 0.0]);
            vec::dist2(f.eval_disk(x), x)
        })
        .fold(0.0, f64::max);
    if max_disp < FIXED_POINT_CELL {
        return Err(Error::AmbiguousFixedPoints { x: 0.0, y: 0.0 });
    }
    let field = |x: [f64; 2]| {
        let y = f.eval_disk(clamp_disk(x));
        [y[0] - x[0], y[1] - x[1]]
    };
    let root = Rect::square(ROOT_CENTER, ROOT_HALF);
    match bisect_zero(&field, root, FIXED_POINT_CELL, 0.0) {
        Ok(z) => {
            if z.winding == 0 {
                return Err(Error::NoInteriorFixedPoint { winding: 0 });
            }
            let point = polish(&field, clamp_disk(z.point));
            Ok(FixedPoint { point, winding: z.winding, levels: z.levels, sibling_hits: z.sibling_hits })
        }
        Err(BisectionFailure::NoWinding(w)) => Err(Error::NoInteriorFixedPoint { winding: w }),
        Err(BisectionFailure::ZeroOnBoundary) => Err(Error::NoInteriorFixedPoint { winding: 0 }),
        // the winding spread over several cells: not a single fixed point
        Err(BisectionFailure::Lost { .. }) => Err(Error::AmbiguousFixedPoints { x: 0.0, y: 0.0 }),
    }
}

/// A few Newton steps on the displacement, kept only while they shrink it
/// and stay within a few bisection cells of the start.
fn polish<F: Fn([f64; 2]) -> [f64; 2]>(field: &F, start: [f64; 2]) -> [f64; 2] {
    let norm = |v: [f64; 2]| v[0].hypot(v[1]);
    let mut x = start;
    let mut fx = field(x);
    for _ in 0..8 {
        let h = 1e-7;
        let fa = field([x[0] + h, x[1]]);
        let fb = field([x[0], x[1] + h]);
        let j = [[(fa[0] - fx[0]) / h, (fb[0] - fx[0]) / h], [(fa[1] - fx[1]) / h, (fb[1] - fx[1]) / h]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            break;
        }
        let dx = [-(j[1][1] * fx[0] - j[0][1] * fx[1]) / det, -(-j[1][0] * fx[0] + j[0][0] * fx[1]) / det];
        let cand = [x[0] + dx[0], x[1] + dx[1]];
        let fc = field(cand);
        if norm(fc) >= norm(fx) || vec::dist2(cand, start) > 10.0 * FIXED_POINT_CELL {
            break;
        }
        x = cand;
        fx = fc;
    }
    x
}

/// Sup distances to the identity on the boundary circle and on the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidityReport {
    pub boundary_defect: f64,
    pub interior_defect: f64,
}

/// Compare how far `f` moves boundary points with how far it moves points
/// of the whole disk; `grid` supplies the interior samples and its
/// resolution sets the boundary sampling.
pub fn check_boundary_rigidity(f: &MapExpr, grid: &SampleGrid) -> Result<RigidityReport> {
    let space = f.space()?;
    if space != Space::Disk || grid.space() != Space::Disk {
        return Err(Error::SpaceMismatch { expected: Space::Disk, found: if space != Space::Disk { space } else { grid.space() } });
    }
    let disp = |p: &SurfacePoint| {
        let x = p.as_disk().unwrap_or([0.0, 0.0]);
        vec::dist2(f.eval_disk(x), x)
    };
    let boundary = SampleGrid::disk_boundary(6 * grid.resolution.max(1));
    let boundary_defect = boundary.points.iter().map(disp).fold(0.0, f64::max);
    let interior_defect = grid.points.iter().chain(boundary.points.iter()).map(disp).fold(0.0, f64::max);
    Ok(RigidityReport { boundary_defect, interior_defect })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_fixes_the_origin() {
        let z = find_fixed_point(&MapExpr::disk_rotation(0.3)).unwrap();
        assert!(z.point[0].hypot(z.point[1]) <= 1e-9);
        assert_eq!(z.winding, 1);
        assert_eq!(z.sibling_hits, 0);
    }

    #[test]
    fn conjugated_rotation_fixes_the_image_of_the_origin() {
        let h = MapExpr::compose(
            MapExpr::disk_mobius([0.3, -0.2]).unwrap(),
            MapExpr::compose(MapExpr::angular_shear(0.4).unwrap(), MapExpr::radial_warp(1.7).unwrap()),
        );
        let expected = h.eval_disk([0.0, 0.0]);
        let z = find_fixed_point(&MapExpr::conj(h, MapExpr::disk_rotation(0.3))).unwrap();
        assert!(vec::dist2(z.point, expected) <= 1e-6, "{:?} vs {expected:?}", z.point);
    }

    #[test]
    fn identity_is_ambiguous() {
        assert!(matches!(
            find_fixed_point(&MapExpr::identity(Space::Disk)),
            Err(Error::AmbiguousFixedPoints { .. })
        ));
    }

    #[test]
    fn rigidity_examples() {
        let grid = SampleGrid::disk(16);
        let r = check_boundary_rigidity(&MapExpr::identity(Space::Disk), &grid).unwrap();
        assert_eq!((r.boundary_defect, r.interior_defect), (0.0, 0.0));
        let r = check_boundary_rigidity(&MapExpr::disk_rotation(0.25), &grid).unwrap();
        assert!((r.boundary_defect - 2f64.sqrt()).abs() < 1e-12);
        assert!((r.interior_defect - 2f64.sqrt()).abs() < 1e-12);
    }
}
