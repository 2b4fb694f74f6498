use super::DiskAction;
use crate::error::{Error, Result};
use crate::geometry::polygon::{
    diameter, hausdorff, point_in_polygon, segments_cross, self_crossings, winding_about,
};
use crate::maps::MapExpr;
use crate::tolerances::DISK_CELL;

/// A closed polyline through one orbit, ordered by angle.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCurve {
    pub points: Vec<[f64; 2]>,
    /// The exact orbit for a finite group (a subset of `points`); empty for
    /// a family, where every vertex is an orbit point.
    pub orbit: Vec<[f64; 2]>,
    pub base: [f64; 2],
    /// The group's fixed point.
    pub center: [f64; 2],
}

/// Orbit of `x` as a polyline with about `samples` vertices. For a finite
/// group with `samples ≤ n` the polyline is the orbit itself.
pub fn orbit_curve(action: &DiskAction, x: [f64; 2], samples: usize) -> Result<OrbitCurve> {
    let (points, orbit) = match action.order() {
        None => (action.orbit(x, samples.max(3)), Vec::new()),
        Some(n) => {
            let orbit = action.orbit(x, n);
            let dense = if samples <= n { orbit.clone() } else { action.orbit(x, n * samples.div_ceil(n)) };
            (dense, orbit)
        }
    };
    let d = diameter(&points);
    if d < 1e-9 {
        return Err(Error::DegenerateOrbit { diameter: d });
    }
    Ok(OrbitCurve { points, orbit, base: x, center: action.center() })
}

impl OrbitCurve {
    pub fn is_simple(&self) -> bool {
        self_crossings(&self.points, true) == 0
    }

    /// Winding number about the group's fixed point.
    pub fn winding(&self) -> i64 {
        winding_about(self.center, &self.points)
    }

    /// Hausdorff distance between the polyline and its image under `g`.
    pub fn invariance_defect(&self, g: &MapExpr) -> f64 {
        let image: Vec<[f64; 2]> = self.points.iter().map(|&p| g.eval_disk(p)).collect();
        hausdorff(&self.points, &image)
    }
}

/// Position of one orbit curve relative to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enclosure {
    /// The first curve lies inside the second.
    Inside,
    Outside,
    Same,
}

impl std::fmt::Display for Enclosure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Enclosure::Inside => "inside",
            Enclosure::Outside => "outside",
            Enclosure::Same => "same",
        })
    }
}

/// The enclosure order between two orbit curves of one group.
pub fn enclosure_compare(c1: &OrbitCurve, c2: &OrbitCurve) -> Result<Enclosure> {
    if hausdorff(&c1.points, &c2.points) <= 2.0 * DISK_CELL {
        return Ok(Enclosure::Same);
    }
    let (a, b) = (&c1.points, &c2.points);
    for i in 0..a.len() {
        let (p, q) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            if segments_cross(p, q, b[j], b[(j + 1) % b.len()]) {
                return Err(Error::CrossingOrbits);
            }
        }
    }
    if point_in_polygon(c1.base, b) {
        Ok(Enclosure::Inside)
    } else if point_in_polygon(c2.base, a) {
        Ok(Enclosure::Outside)
    } else {
        Err(Error::CrossingOrbits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CircleFamily, GroupSpec, RotationModel};
    use crate::geometry::Space;

    fn rotations() -> DiskAction {
        DiskAction::new(&GroupSpec::Family(CircleFamily::rotations(Space::Disk).unwrap())).unwrap()
    }

    #[test]
    fn rotation_orbit_is_a_circle() {
        let c = orbit_curve(&rotations(), [0.5, 0.0], 256).unwrap();
        let dev = c.points.iter().map(|p| (p[0].hypot(p[1]) - 0.5).abs()).fold(0.0, f64::max);
        assert!(dev <= 1e-9);
        assert!(c.is_simple());
        assert_eq!(c.winding(), 1);
    }

    #[test]
    fn compare_examples() {
        let act = rotations();
        let a = orbit_curve(&act, [0.3, 0.0], 256).unwrap();
        let b = orbit_curve(&act, [0.0, 0.6], 256).unwrap();
        assert_eq!(enclosure_compare(&a, &b).unwrap(), Enclosure::Inside);
        assert_eq!(enclosure_compare(&b, &a).unwrap(), Enclosure::Outside);
        assert_eq!(enclosure_compare(&a, &a).unwrap(), Enclosure::Same);
        assert!(matches!(orbit_curve(&act, [0.0, 0.0], 64), Err(Error::DegenerateOrbit { .. })));
    }

    #[test]
    fn warped_orbits_near_the_boundary() {
        let h = MapExpr::compose(MapExpr::disk_mobius([0.25, 0.1]).unwrap(), MapExpr::aniso_warp(1.3, 0.3).unwrap());
        let fam = CircleFamily::new(h.clone(), RotationModel::Disk);
        let act = DiskAction::new(&GroupSpec::Family(fam.clone())).unwrap();
        let c = orbit_curve(&act, [0.0, -0.95], 256).unwrap();
        assert!(c.is_simple());
        assert_eq!(c.winding(), 1);
        for k in 0..4 {
            assert!(c.invariance_defect(&fam.member(0.1 + 0.2 * k as f64)) <= 2.0 * DISK_CELL);
        }
    }

    #[test]
    fn finite_orbit_is_the_angular_ordering() {
        let g = MapExpr::conj(MapExpr::aniso_warp(1.4, 0.2).unwrap(), MapExpr::disk_rotation(3.0 / 8.0));
        let act = DiskAction::new(&GroupSpec::cyclic(g.clone())).unwrap();
        let c = orbit_curve(&act, [0.5, 0.2], 8).unwrap();
        assert_eq!(c.points.len(), 8);
        assert!(c.is_simple());
        assert_eq!(c.winding(), 1);
        assert!(c.invariance_defect(&g) < 1e-9);
    }
}
