//! Points, sampling grids, metrics, Brouwer degree and moduli of continuity.

mod degree;
mod grid;
mod metric;
mod modulus;
pub mod polygon;
pub mod vec;
pub mod winding;

use std::fmt;

pub use degree::{map_degree, signed_triangle_area};
pub use grid::{GridKind, SampleGrid};
pub use metric::{averaged_metric, point_distance, sup_distance, Metric, MetricKind};
pub use modulus::modulus_of_continuity;

/// The spaces homeomorphisms act on.
///
/// `Plane` only appears as the space of planar expressions transported to the
/// sphere by stereographic projection; there are no plane sample points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Circle,
    Disk,
    Plane,
    Sphere,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Space::Circle => "circle",
            Space::Disk => "disk",
            Space::Plane => "plane",
            Space::Sphere => "sphere",
        };
        f.write_str(s)
    }
}

/// A point of the circle (angle in turns, `[0, 1)`), of the closed unit disk,
/// or of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfacePoint {
    Circle(f64),
    Disk([f64; 2]),
    Sphere([f64; 3]),
}

impl SurfacePoint {
    pub fn space(&self) -> Space {
        match self {
            SurfacePoint::Circle(_) => Space::Circle,
            SurfacePoint::Disk(_) => Space::Disk,
            SurfacePoint::Sphere(_) => Space::Sphere,
        }
    }

    /// Circle point with the angle reduced to `[0, 1)`.
    pub fn circle(turns: f64) -> Self {
        SurfacePoint::Circle(wrap_turns(turns))
    }

    /// Disk point, radially clamped into the closed unit disk.
    pub fn disk(u: f64, v: f64) -> Self {
        SurfacePoint::Disk(clamp_disk([u, v]))
    }

    /// Sphere point, normalized.
    pub fn sphere(x: f64, y: f64, z: f64) -> Self {
        SurfacePoint::Sphere(vec::normalize([x, y, z]))
    }

    pub fn as_circle(&self) -> Option<f64> {
        match *self {
            SurfacePoint::Circle(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_disk(&self) -> Option<[f64; 2]> {
        match *self {
            SurfacePoint::Disk(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_sphere(&self) -> Option<[f64; 3]> {
        match *self {
            SurfacePoint::Sphere(p) => Some(p),
            _ => None,
        }
    }
}

/// Reduce an angle in turns to `[0, 1)`.
pub fn wrap_turns(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Signed representative of `t` mod 1 in `[-1/2, 1/2)`.
pub fn centered_turns(t: f64) -> f64 {
    let r = wrap_turns(t);
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

/// Distance on `R/Z`, in turns.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    centered_turns(a - b).abs()
}

pub(crate) fn clamp_disk(p: [f64; 2]) -> [f64; 2] {
    let r = p[0].hypot(p[1]);
    if r > 1.0 {
        [p[0] / r, p[1] / r]
    } else {
        p
    }
}
