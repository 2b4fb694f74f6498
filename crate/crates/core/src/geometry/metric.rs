use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

use rayon::prelude::*;

use super::{circular_distance, vec, SampleGrid, Space, SurfacePoint};
use crate::error::{Error, Result};
use crate::maps::MapExpr;

/// Pointwise distance formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    /// Arc length on the unit circle (radians).
    Arc,
    /// Straight-line distance in the ambient Euclidean space.
    Chordal,
    /// Euclidean distance in the disk (same as `Chordal` there).
    Euclidean,
    /// Great-circle distance on the sphere (radians).
    Geodesic,
    /// Great-circle distance in units of a quarter turn, so that a hemisphere
    /// has radius 1.
    NormalizedGeodesic,
}

/// A metric on one of the spaces: either a fixed formula or the average of a
/// formula over a finite list of group elements.
#[derive(Debug, Clone)]
pub enum Metric {
    Intrinsic { space: Space, kind: MetricKind },
    Averaged { space: Space, kind: MetricKind, elements: Arc<Vec<MapExpr>> },
}

impl Metric {
    pub fn new(space: Space, kind: MetricKind) -> Self {
        Metric::Intrinsic { space, kind }
    }

    /// Arc length on the circle, Euclidean on the disk, chordal on the sphere.
    pub fn default_for(space: Space) -> Self {
        let kind = match space {
            Space::Circle => MetricKind::Arc,
            Space::Disk | Space::Plane => MetricKind::Euclidean,
            Space::Sphere => MetricKind::Chordal,
        };
        Metric::Intrinsic { space, kind }
    }

    pub fn space(&self) -> Space {
        match self {
            Metric::Intrinsic { space, .. } | Metric::Averaged { space, .. } => *space,
        }
    }

    pub fn kind(&self) -> MetricKind {
        match self {
            Metric::Intrinsic { kind, .. } | Metric::Averaged { kind, .. } => *kind,
        }
    }

    /// Distance between two points of the metric's space.
    ///
    /// Points of another space give `NaN`; callers validate spaces first.
    pub fn distance(&self, a: &SurfacePoint, b: &SurfacePoint) -> f64 {
        match self {
            Metric::Intrinsic { kind, .. } => point_distance(*kind, a, b),
            Metric::Averaged { kind, elements, .. } => {
                let mut total = 0.0;
                for g in elements.iter() {
                    let ga = g.eval(a);
                    let gb = g.eval(b);
                    total += point_distance(*kind, &ga, &gb);
                }
                total / elements.len() as f64
            }
        }
    }
}

/// Distance formula `kind` applied to two points of the same space.
pub fn point_distance(kind: MetricKind, a: &SurfacePoint, b: &SurfacePoint) -> f64 {
    match (a, b) {
        (SurfacePoint::Circle(x), SurfacePoint::Circle(y)) => {
            let t = circular_distance(*x, *y);
            match kind {
                MetricKind::Chordal | MetricKind::Euclidean => 2.0 * (PI * t).sin(),
                MetricKind::NormalizedGeodesic => TAU * t / FRAC_PI_2,
                MetricKind::Arc | MetricKind::Geodesic => TAU * t,
            }
        }
        (SurfacePoint::Disk(p), SurfacePoint::Disk(q)) => vec::dist2(*p, *q),
        (SurfacePoint::Sphere(p), SurfacePoint::Sphere(q)) => {
            let c = vec::dist3(*p, *q);
            match kind {
                MetricKind::Chordal | MetricKind::Euclidean | MetricKind::Arc => c,
                MetricKind::Geodesic => 2.0 * (c / 2.0).min(1.0).asin(),
                MetricKind::NormalizedGeodesic => 2.0 * (c / 2.0).min(1.0).asin() / FRAC_PI_2,
            }
        }
        _ => f64::NAN,
    }
}

/// Invariant metric of a finite group: `δ(x, y) = (1/|G|) Σ_g d(g x, g y)`.
///
/// `elements` must be the full list of group elements; each of them is then
/// an isometry of the result.
pub fn averaged_metric(elements: Vec<MapExpr>, kind: MetricKind) -> Result<Metric> {
    let first = elements
        .first()
        .ok_or_else(|| Error::InvalidGroup("empty element list".into()))?;
    let space = first.space()?;
    for g in &elements {
        let s = g.space()?;
        if s != space {
            return Err(Error::SpaceMismatch { expected: space, found: s });
        }
    }
    Ok(Metric::Averaged { space, kind, elements: Arc::new(elements) })
}

/// `max_x d(f(x), g(x))` over the grid points.
pub fn sup_distance(f: &MapExpr, g: &MapExpr, grid: &SampleGrid, metric: &Metric) -> Result<f64> {
    let space = grid.space();
    for s in [f.space()?, g.space()?, metric.space()] {
        if s != space {
            return Err(Error::SpaceMismatch { expected: space, found: s });
        }
    }
    let worst = grid
        .points
        .par_iter()
        .map(|x| metric.distance(&f.eval(x), &g.eval(x)))
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_zero_distance() {
        let id = MapExpr::Identity(Space::Sphere);
        let d = sup_distance(&id, &id, &SampleGrid::sphere(200), &Metric::default_for(Space::Sphere)).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn half_turn_of_circle_is_at_chordal_distance_two() {
        let f = MapExpr::circle_rotation(0.5);
        let id = MapExpr::Identity(Space::Circle);
        let m = Metric::new(Space::Circle, MetricKind::Chordal);
        let d = sup_distance(&f, &id, &SampleGrid::circle(64), &m).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_rotation_displacement_peaks_on_equator() {
        let theta = TAU / 5.0;
        let f = MapExpr::sphere_rotation([0.0, 0.0, 1.0], theta).unwrap();
        let id = MapExpr::Identity(Space::Sphere);
        let grid = SampleGrid::sphere(4001);
        let d = sup_distance(&f, &id, &grid, &Metric::default_for(Space::Sphere)).unwrap();
        // brute force over an independent fine latitude scan
        let mut best: f64 = 0.0;
        for k in 0..=20000 {
            let z = -1.0 + 2.0 * k as f64 / 20000.0;
            let rho = (1.0 - z * z).sqrt();
            best = best.max(2.0 * rho * (theta / 2.0).sin());
        }
        assert!((best - 2.0 * (theta / 2.0).sin()).abs() < 1e-12);
        assert!((d - best).abs() < 1e-6);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let f = MapExpr::circle_rotation(0.1);
        let err = sup_distance(&f, &f, &SampleGrid::disk(3), &Metric::default_for(Space::Disk)).unwrap_err();
        assert!(matches!(err, Error::SpaceMismatch { .. }));
    }

    #[test]
    fn metric_axioms_on_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let m = Metric::default_for(Space::Sphere);
        for _ in 0..500 {
            let mut pt = || {
                SurfacePoint::sphere(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            };
            let (a, b, c) = (pt(), pt(), pt());
            assert_eq!(m.distance(&a, &a), 0.0);
            assert_eq!(m.distance(&a, &b), m.distance(&b, &a));
            assert!(m.distance(&a, &c) <= m.distance(&a, &b) + m.distance(&b, &c) + 1e-12);
        }
    }
}
