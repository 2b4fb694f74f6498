use std::f64::consts::TAU;

use super::{vec, Space, SurfacePoint};

/// How the points of a [`SampleGrid`] were generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// `n` equispaced angles `k/n`.
    Circle,
    /// Center plus rings `k/n`, `k = 1..=n`, ring `k` carrying `6k` points.
    DiskPolar,
    /// `n` equispaced points of the unit circle viewed as disk points.
    DiskBoundary,
    /// Fibonacci lattice with `n` points.
    Sphere,
    /// Fibonacci lattice restricted to the spherical cap of chordal radius
    /// `radius` around `center`.
    SphereCap { center: [f64; 3], radius: f64 },
}

/// Deterministic point set discretizing one of the compact spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub kind: GridKind,
    pub resolution: usize,
    pub points: Vec<SurfacePoint>,
}

impl SampleGrid {
    pub fn circle(n: usize) -> Self {
        let n = n.max(1);
        let points = (0..n)
            .map(|k| SurfacePoint::Circle(k as f64 / n as f64))
            .collect();
        Self { kind: GridKind::Circle, resolution: n, points }
    }

    pub fn disk(n: usize) -> Self {
        let n = n.max(1);
        let mut points = vec![SurfacePoint::Disk([0.0, 0.0])];
        for k in 1..=n {
            let r = k as f64 / n as f64;
            let m = 6 * k;
            let phase = if k % 2 == 0 { 0.0 } else { 0.5 };
            for j in 0..m {
                let a = TAU * (j as f64 + phase) / m as f64;
                points.push(SurfacePoint::Disk([r * a.cos(), r * a.sin()]));
            }
        }
        Self { kind: GridKind::DiskPolar, resolution: n, points }
    }

    pub fn disk_boundary(n: usize) -> Self {
        let n = n.max(1);
        let points = (0..n)
            .map(|k| {
                let a = TAU * k as f64 / n as f64;
                SurfacePoint::Disk([a.cos(), a.sin()])
            })
            .collect();
        Self { kind: GridKind::DiskBoundary, resolution: n, points }
    }

    pub fn sphere(n: usize) -> Self {
        let n = n.max(1);
        let points = fibonacci(n, 1.0)
            .into_iter()
            .map(SurfacePoint::Sphere)
            .collect();
        Self { kind: GridKind::Sphere, resolution: n, points }
    }

    /// Fibonacci points of the cap `{p : |p - center| <= radius}`.
    pub fn sphere_cap(center: [f64; 3], radius: f64, n: usize) -> Self {
        let n = n.max(1);
        let center = vec::normalize(center);
        let radius = radius.clamp(0.0, 2.0);
        // chordal radius c <-> height 1 - c²/2 above the cap center
        let span = radius * radius / 2.0;
        let frame = vec::tangent_frame(center);
        let points = fibonacci(n, span / 2.0)
            .into_iter()
            .map(|q| {
                let p = vec::add(
                    vec::scale(center, q[2]),
                    vec::add(vec::scale(frame.0, q[0]), vec::scale(frame.1, q[1])),
                );
                SurfacePoint::Sphere(vec::normalize(p))
            })
            .collect();
        Self { kind: GridKind::SphereCap { center, radius }, resolution: n, points }
    }

    pub fn space(&self) -> Space {
        match self.kind {
            GridKind::Circle => Space::Circle,
            GridKind::DiskPolar | GridKind::DiskBoundary => Space::Disk,
            GridKind::Sphere | GridKind::SphereCap { .. } => Space::Sphere,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Fibonacci lattice on the cap `z >= 1 - 2 * fraction` (fraction 1 = whole sphere).
fn fibonacci(n: usize, fraction: f64) -> Vec<[f64; 3]> {
    let golden = TAU * (1.0 - 1.0 / ((1.0 + 5f64.sqrt()) / 2.0));
    (0..n)
        .map(|i| {
            let z = 1.0 - fraction * (2 * i + 1) as f64 / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_are_pure_functions_of_resolution() {
        assert_eq!(SampleGrid::circle(64).len(), 64);
        assert_eq!(SampleGrid::disk(4).len(), 1 + 3 * 4 * 5);
        assert_eq!(SampleGrid::sphere(101).len(), 101);
        assert_eq!(SampleGrid::disk(7), SampleGrid::disk(7));
        assert_eq!(SampleGrid::sphere(333), SampleGrid::sphere(333));
    }

    #[test]
    fn odd_fibonacci_lattice_contains_equator_point() {
        let g = SampleGrid::sphere(1001);
        let p = g.points[500].as_sphere().unwrap();
        assert!(p[2].abs() < 1e-15);
        for q in &g.points {
            let q = q.as_sphere().unwrap();
            assert!((vec::norm(q) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cap_points_stay_in_cap() {
        let c = vec::normalize([1.0, 2.0, -0.5]);
        let g = SampleGrid::sphere_cap(c, 0.3, 500);
        for q in &g.points {
            assert!(vec::dist3(q.as_sphere().unwrap(), c) <= 0.3 + 1e-12);
        }
    }
}
