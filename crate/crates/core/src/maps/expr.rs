use std::f64::consts::TAU;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{clamp_disk, vec, wrap_turns, Space, SurfacePoint};

/// A homeomorphism of the circle, the disk or the sphere, written as an
/// expression over primitives with closed-form inverses.
///
/// Angles of circle and disk primitives are in turns; sphere rotation angles
/// are in radians. Planar primitives (`DiskRotation` through `DiskMobius`)
/// act on the closed unit disk and, under [`MapExpr::Stereo`], on the whole
/// plane; `PlaneMobius` only makes sense under `Stereo`.
#[derive(Debug, Clone, PartialEq)]
pub enum MapExpr {
    Identity(Space),
    /// `x ↦ x + α`.
    CircleRotation(f64),
    /// `x ↦ x + Σ a_k sin(2πkx) / (2πk)`, with `Σ|a_k| < 1`.
    CircleWarp(Vec<f64>),
    /// Rotation by `α` turns about the origin.
    DiskRotation(f64),
    /// `r ↦ r^β` along rays.
    RadialWarp(f64),
    /// `θ ↦ θ + c · 2r² / (1 + r²)` (turns), radius unchanged.
    AngularShear(f64),
    /// `r ↦ r^{β (1 + amp cos 2πθ)}`, angle unchanged.
    AnisoWarp { beta: f64, amp: f64 },
    /// Disk automorphism `z ↦ (z + a) / (1 + ā z)`, `|a| < 1`.
    DiskMobius([f64; 2]),
    /// `z ↦ (a z + b) / (c z + d)` on the Riemann sphere, coefficients complex.
    PlaneMobius([[f64; 2]; 4]),
    /// Rotation of the sphere about a unit axis by an angle in radians.
    SphereRotation { axis: [f64; 3], angle: f64 },
    /// Orthogonal reflection in the plane with the given unit normal.
    SphereReflection([f64; 3]),
    Antipodal,
    /// A planar map transported to the sphere by stereographic projection
    /// from the north pole (the north pole is the point at infinity).
    Stereo(Arc<MapExpr>),
    /// `Conjugation(g, f) = g ∘ f ∘ g⁻¹`.
    Conjugation(Arc<MapExpr>, Arc<MapExpr>),
    /// `Compose(f, g) = f ∘ g`.
    Compose(Arc<MapExpr>, Arc<MapExpr>),
    Inverse(Arc<MapExpr>),
    Power(Arc<MapExpr>, i64),
}

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Ext {
    Fin([f64; 2]),
    Inf,
}

/// Internal evaluation state.
#[derive(Debug, Clone, Copy)]
enum Pt {
    C(f64),
    D([f64; 2]),
    P(Ext),
    S([f64; 3]),
}

impl MapExpr {
    pub fn identity(space: Space) -> Self {
        MapExpr::Identity(space)
    }

    pub fn circle_rotation(alpha: f64) -> Self {
        MapExpr::CircleRotation(alpha)
    }

    pub fn circle_warp(coeffs: Vec<f64>) -> Result<Self> {
        let e = MapExpr::CircleWarp(coeffs);
        e.validate_node()?;
        Ok(e)
    }

    pub fn disk_rotation(alpha: f64) -> Self {
        MapExpr::DiskRotation(alpha)
    }

    pub fn radial_warp(beta: f64) -> Result<Self> {
        let e = MapExpr::RadialWarp(beta);
        e.validate_node()?;
        Ok(e)
    }

    pub fn angular_shear(amount: f64) -> Result<Self> {
        let e = MapExpr::AngularShear(amount);
        e.validate_node()?;
        Ok(e)
    }

    pub fn aniso_warp(beta: f64, amp: f64) -> Result<Self> {
        let e = MapExpr::AnisoWarp { beta, amp };
        e.validate_node()?;
        Ok(e)
    }

    pub fn disk_mobius(a: [f64; 2]) -> Result<Self> {
        let e = MapExpr::DiskMobius(a);
        e.validate_node()?;
        Ok(e)
    }

    pub fn plane_mobius(coeffs: [[f64; 2]; 4]) -> Result<Self> {
        let e = MapExpr::PlaneMobius(coeffs);
        e.validate_node()?;
        Ok(e)
    }

    pub fn sphere_rotation(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = vec::norm(axis);
        if !(n > 0.0) || !angle.is_finite() {
            return Err(Error::InvalidMap("rotation axis must be nonzero".into()));
        }
        Ok(MapExpr::SphereRotation { axis: unit(axis, n), angle })
    }

    pub fn sphere_reflection(normal: [f64; 3]) -> Result<Self> {
        let n = vec::norm(normal);
        if !(n > 0.0) {
            return Err(Error::InvalidMap("reflection normal must be nonzero".into()));
        }
        Ok(MapExpr::SphereReflection(unit(normal, n)))
    }

    pub fn antipodal() -> Self {
        MapExpr::Antipodal
    }

    pub fn stereo(f: MapExpr) -> Result<Self> {
        let e = MapExpr::Stereo(Arc::new(f));
        e.space()?;
        Ok(e)
    }

    /// `g ∘ f ∘ g⁻¹`.
    pub fn conj(g: MapExpr, f: MapExpr) -> Self {
        MapExpr::Conjugation(Arc::new(g), Arc::new(f))
    }

    /// `f ∘ g`.
    pub fn compose(f: MapExpr, g: MapExpr) -> Self {
        MapExpr::Compose(Arc::new(f), Arc::new(g))
    }

    pub fn inverse(&self) -> Self {
        MapExpr::Inverse(Arc::new(self.clone()))
    }

    pub fn power(&self, n: i64) -> Self {
        MapExpr::Power(Arc::new(self.clone()), n)
    }

    /// Parameter checks of a single node, not recursing.
    fn validate_node(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidMap(m.to_string()));
        match self {
            MapExpr::CircleRotation(a) | MapExpr::DiskRotation(a) | MapExpr::AngularShear(a) => {
                if !a.is_finite() {
                    return bad("angle must be finite");
                }
            }
            MapExpr::CircleWarp(c) => {
                if c.iter().any(|a| !a.is_finite()) {
                    return bad("warp coefficients must be finite");
                }
                let total: f64 = c.iter().map(|a| a.abs()).sum();
                if total >= 1.0 {
                    return Err(Error::InvalidMap(format!(
                        "warp coefficient sum {total} must be below 1"
                    )));
                }
            }
            MapExpr::RadialWarp(b) => {
                if !(b.is_finite() && *b > 0.0) {
                    return bad("radial exponent must be positive");
                }
            }
            MapExpr::AnisoWarp { beta, amp } => {
                if !(beta.is_finite() && *beta > 0.0 && amp.is_finite() && amp.abs() < 1.0) {
                    return bad("aniso warp needs beta > 0 and |amp| < 1");
                }
            }
            MapExpr::DiskMobius(a) => {
                if !(a[0].hypot(a[1]) < 1.0) {
                    return bad("disk mobius parameter must lie in the open disk");
                }
            }
            MapExpr::PlaneMobius([a, b, c, d]) => {
                let det = csub(cmul(*a, *d), cmul(*b, *c));
                if !(det[0].hypot(det[1]) > 1e-300) {
                    return bad("mobius determinant vanishes");
                }
            }
            MapExpr::SphereRotation { axis, angle } => {
                if (vec::norm(*axis) - 1.0).abs() > 1e-9 || !angle.is_finite() {
                    return bad("rotation axis must be a unit vector");
                }
            }
            MapExpr::SphereReflection(n)
                if (vec::norm(*n) - 1.0).abs() > 1e-9 => {
                    return bad("reflection normal must be a unit vector");
                }
            _ => {}
        }
        Ok(())
    }

    /// Full recursive validation: parameters and space consistency.
    pub fn validate(&self) -> Result<()> {
        self.validate_node()?;
        match self {
            MapExpr::Stereo(f) | MapExpr::Inverse(f) | MapExpr::Power(f, _) => f.validate()?,
            MapExpr::Conjugation(f, g) | MapExpr::Compose(f, g) => {
                f.validate()?;
                g.validate()?;
            }
            _ => {}
        }
        self.space().map(|_| ())
    }

    /// The space the expression acts on.
    pub fn space(&self) -> Result<Space> {
        Ok(match self {
            MapExpr::Identity(s) => *s,
            MapExpr::CircleRotation(_) | MapExpr::CircleWarp(_) => Space::Circle,
            MapExpr::DiskRotation(_)
            | MapExpr::RadialWarp(_)
            | MapExpr::AngularShear(_)
            | MapExpr::AnisoWarp { .. }
            | MapExpr::DiskMobius(_) => Space::Disk,
            MapExpr::PlaneMobius(_) => Space::Plane,
            MapExpr::SphereRotation { .. } | MapExpr::SphereReflection(_) | MapExpr::Antipodal => {
                Space::Sphere
            }
            MapExpr::Stereo(f) => match f.space()? {
                Space::Disk | Space::Plane => Space::Sphere,
                other => {
                    return Err(Error::SpaceMismatch { expected: Space::Plane, found: other })
                }
            },
            MapExpr::Inverse(f) | MapExpr::Power(f, _) => f.space()?,
            MapExpr::Conjugation(f, g) | MapExpr::Compose(f, g) => unify(f.space()?, g.space()?)?,
        })
    }

    /// `+1` for orientation-preserving expressions, `-1` for reversing ones.
    pub fn orientation(&self) -> i8 {
        match self {
            MapExpr::SphereReflection(_) | MapExpr::Antipodal => -1,
            MapExpr::Stereo(f) | MapExpr::Conjugation(_, f) | MapExpr::Inverse(f) => f.orientation(),
            MapExpr::Compose(f, g) => f.orientation() * g.orientation(),
            MapExpr::Power(f, n)
                if n.rem_euclid(2) == 1 => {
                    f.orientation()
                }
            _ => 1,
        }
    }

    /// Evaluate after checking that `x` lies in the expression's space.
    pub fn evaluate(&self, x: &SurfacePoint) -> Result<SurfacePoint> {
        let s = self.space()?;
        if s != x.space() {
            return Err(Error::SpaceMismatch { expected: s, found: x.space() });
        }
        Ok(self.eval(x))
    }

    /// Evaluate without checking spaces; the caller guarantees they match.
    pub fn eval(&self, x: &SurfacePoint) -> SurfacePoint {
        let p = match *x {
            SurfacePoint::Circle(t) => Pt::C(t),
            SurfacePoint::Disk(p) => Pt::D(p),
            SurfacePoint::Sphere(p) => Pt::S(p),
        };
        match self.apply(p, false) {
            Pt::C(t) => SurfacePoint::Circle(wrap_turns(t)),
            Pt::D(p) => SurfacePoint::Disk(clamp_disk(p)),
            Pt::S(p) => SurfacePoint::Sphere(vec::normalize(p)),
            Pt::P(_) => *x,
        }
    }

    /// Shorthand for circle maps: angle in turns to angle in turns.
    pub fn eval_circle(&self, t: f64) -> f64 {
        match self.apply(Pt::C(t), false) {
            Pt::C(y) => wrap_turns(y),
            _ => t,
        }
    }

    pub fn eval_disk(&self, p: [f64; 2]) -> [f64; 2] {
        match self.apply(Pt::D(p), false) {
            Pt::D(q) => clamp_disk(q),
            _ => p,
        }
    }

    pub fn eval_sphere(&self, p: [f64; 3]) -> [f64; 3] {
        match self.apply(Pt::S(p), false) {
            Pt::S(q) => vec::normalize(q),
            _ => p,
        }
    }

    fn apply(&self, p: Pt, inv: bool) -> Pt {
        match self {
            MapExpr::Identity(_) => p,
            MapExpr::CircleRotation(a) => match p {
                Pt::C(t) => Pt::C(wrap_turns(if inv { t - a } else { t + a })),
                other => other,
            },
            MapExpr::CircleWarp(c) => match p {
                Pt::C(t) => Pt::C(wrap_turns(if inv { warp_inverse(c, t) } else { warp(c, t) })),
                other => other,
            },
            MapExpr::DiskRotation(_)
            | MapExpr::RadialWarp(_)
            | MapExpr::AngularShear(_)
            | MapExpr::AnisoWarp { .. }
            | MapExpr::DiskMobius(_)
            | MapExpr::PlaneMobius(_) => match p {
                Pt::D(z) => match self.planar(Ext::Fin(z), inv) {
                    Ext::Fin(w) => Pt::D(clamp_disk(w)),
                    Ext::Inf => Pt::D(z),
                },
                Pt::P(z) => Pt::P(self.planar(z, inv)),
                other => other,
            },
            MapExpr::SphereRotation { axis, angle } => match p {
                Pt::S(x) => Pt::S(vec::rotate(x, *axis, if inv { -angle } else { *angle })),
                other => other,
            },
            MapExpr::SphereReflection(n) => match p {
                Pt::S(x) => Pt::S(vec::sub(x, vec::scale(*n, 2.0 * vec::dot(x, *n)))),
                other => other,
            },
            MapExpr::Antipodal => match p {
                Pt::S(x) => Pt::S([-x[0], -x[1], -x[2]]),
                other => other,
            },
            MapExpr::Stereo(f) => match p {
                Pt::S(x) => match f.apply(Pt::P(to_plane(x)), inv) {
                    Pt::P(z) => Pt::S(from_plane(z)),
                    _ => Pt::S(x),
                },
                other => other,
            },
            MapExpr::Conjugation(g, f) => {
                let q = g.apply(p, true);
                let q = f.apply(q, inv);
                g.apply(q, false)
            }
            MapExpr::Compose(f, g) => {
                if inv {
                    g.apply(f.apply(p, true), true)
                } else {
                    f.apply(g.apply(p, false), false)
                }
            }
            MapExpr::Inverse(f) => f.apply(p, !inv),
            MapExpr::Power(f, n) => {
                let dir = inv ^ (*n < 0);
                let mut q = p;
                for _ in 0..n.unsigned_abs() {
                    q = f.apply(q, dir);
                }
                q
            }
        }
    }

    /// Planar primitives on the extended plane.
    fn planar(&self, z: Ext, inv: bool) -> Ext {
        match self {
            MapExpr::DiskMobius(a) => {
                let s = if inv { -1.0 } else { 1.0 };
                let a = [s * a[0], s * a[1]];
                mobius([[1.0, 0.0], a, [a[0], -a[1]], [1.0, 0.0]], z)
            }
            MapExpr::PlaneMobius([a, b, c, d]) => {
                if inv {
                    mobius([*d, [-b[0], -b[1]], [-c[0], -c[1]], *a], z)
                } else {
                    mobius([*a, *b, *c, *d], z)
                }
            }
            _ => {
                let Ext::Fin(w) = z else { return Ext::Inf };
                let r = w[0].hypot(w[1]);
                if r == 0.0 {
                    return z;
                }
                let theta = w[1].atan2(w[0]) / TAU;
                let (r2, t2) = match self {
                    MapExpr::DiskRotation(a) => (r, if inv { theta - a } else { theta + a }),
                    MapExpr::RadialWarp(b) => (r.powf(if inv { 1.0 / b } else { *b }), theta),
                    MapExpr::AngularShear(c) => {
                        let s = c * 2.0 * r * r / (1.0 + r * r);
                        (r, if inv { theta - s } else { theta + s })
                    }
                    MapExpr::AnisoWarp { beta, amp } => {
                        let e = beta * (1.0 + amp * (TAU * theta).cos());
                        (r.powf(if inv { 1.0 / e } else { e }), theta)
                    }
                    _ => (r, theta),
                };
                let a = TAU * t2;
                Ext::Fin([r2 * a.cos(), r2 * a.sin()])
            }
        }
    }
}

/// Normalize, leaving already-unit vectors bit-identical so that printed
/// expressions parse back to themselves.
fn unit(v: [f64; 3], n: f64) -> [f64; 3] {
    if (n - 1.0).abs() <= 4.0 * f64::EPSILON {
        v
    } else {
        vec::scale(v, 1.0 / n)
    }
}

fn unify(a: Space, b: Space) -> Result<Space> {
    match (a, b) {
        _ if a == b => Ok(a),
        (Space::Disk, Space::Plane) | (Space::Plane, Space::Disk) => Ok(Space::Plane),
        _ => Err(Error::SpaceMismatch { expected: a, found: b }),
    }
}

fn warp(c: &[f64], x: f64) -> f64 {
    x + c
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let w = TAU * (k + 1) as f64;
            a * (w * x).sin() / w
        })
        .sum::<f64>()
}

fn warp_slope(c: &[f64], x: f64) -> f64 {
    1.0 + c
        .iter()
        .enumerate()
        .map(|(k, a)| a * (TAU * (k + 1) as f64 * x).cos())
        .sum::<f64>()
}

/// Solve `warp(x) = y` on the lift: bracketed Newton, at most 60 steps.
pub(crate) fn warp_inverse(c: &[f64], y: f64) -> f64 {
    let spread: f64 = c
        .iter()
        .enumerate()
        .map(|(k, a)| a.abs() / (TAU * (k + 1) as f64))
        .sum();
    let (mut lo, mut hi) = (y - spread - 1e-15, y + spread + 1e-15);
    let mut x = y;
    for _ in 0..60 {
        let r = warp(c, x) - y;
        if r == 0.0 {
            return x;
        }
        if r > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = x - r / warp_slope(c, x);
        x = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        if hi - lo < 1e-15 || (r.abs() < 1e-16) {
            break;
        }
    }
    x
}

fn cmul(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]]
}

fn csub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cdiv(a: [f64; 2], b: [f64; 2]) -> Option<[f64; 2]> {
    let d = b[0] * b[0] + b[1] * b[1];
    if d == 0.0 {
        return None;
    }
    Some([(a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d])
}

fn mobius([a, b, c, d]: [[f64; 2]; 4], z: Ext) -> Ext {
    match z {
        Ext::Inf => cdiv(a, c).map_or(Ext::Inf, Ext::Fin),
        Ext::Fin(z) => {
            let num = [cmul(a, z)[0] + b[0], cmul(a, z)[1] + b[1]];
            let den = [cmul(c, z)[0] + d[0], cmul(c, z)[1] + d[1]];
            cdiv(num, den).map_or(Ext::Inf, Ext::Fin)
        }
    }
}

/// Stereographic projection from the north pole; the south pole goes to 0.
fn to_plane(x: [f64; 3]) -> Ext {
    if x[2] > 0.0 {
        let d = [x[0], -x[1]];
        let n2 = d[0] * d[0] + d[1] * d[1];
        if n2 == 0.0 {
            return Ext::Inf;
        }
        // (x + iy) / (1 - z) = (1 + z) / (x - iy)
        let s = (1.0 + x[2]) / n2;
        Ext::Fin([s * x[0], s * x[1]])
    } else {
        let s = 1.0 / (1.0 - x[2]);
        Ext::Fin([s * x[0], s * x[1]])
    }
}

fn from_plane(z: Ext) -> [f64; 3] {
    match z {
        Ext::Inf => [0.0, 0.0, 1.0],
        Ext::Fin(w) => {
            let q = w[0] * w[0] + w[1] * w[1];
            if !q.is_finite() || q > 1e300 {
                return [0.0, 0.0, 1.0];
            }
            let s = 1.0 / (1.0 + q);
            [2.0 * w[0] * s, 2.0 * w[1] * s, (q - 1.0) * s]
        }
    }
}

/// Stereographic chart used by the sphere module: sphere point to plane point
/// (`None` at the north pole).
pub(crate) fn stereo_chart(x: [f64; 3]) -> Option<[f64; 2]> {
    match to_plane(x) {
        Ext::Fin(w) => Some(w),
        Ext::Inf => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SampleGrid;

    #[test]
    fn primitive_examples() {
        let id = MapExpr::Identity(Space::Circle);
        assert_eq!(id.eval_circle(0.3), 0.3);
        assert_eq!(MapExpr::circle_rotation(0.25).eval_circle(0.5), 0.75);
        let q = MapExpr::radial_warp(2.0).unwrap().eval_disk([0.6, 0.0]);
        assert!((q[0] - 0.36).abs() < 1e-15 && q[1].abs() < 1e-15);
    }

    #[test]
    fn warp_sum_bound_is_enforced() {
        assert!(MapExpr::circle_warp(vec![0.6, 0.4]).is_err());
        assert!(MapExpr::circle_warp(vec![0.6, 0.39]).is_ok());
        assert!(MapExpr::radial_warp(0.0).is_err());
        assert!(MapExpr::disk_mobius([0.8, 0.6]).is_err());
    }

    fn corpus() -> Vec<MapExpr> {
        let warp = MapExpr::circle_warp(vec![0.5, -0.2, 0.1]).unwrap();
        let h = MapExpr::compose(
            MapExpr::disk_mobius([0.2, -0.1]).unwrap(),
            MapExpr::compose(MapExpr::aniso_warp(1.3, 0.3).unwrap(), MapExpr::angular_shear(0.2).unwrap()),
        );
        let sh = MapExpr::stereo(MapExpr::compose(
            MapExpr::radial_warp(1.5).unwrap(),
            MapExpr::plane_mobius([[1.0, 0.0], [0.3, 0.2], [0.1, 0.0], [1.0, 0.0]]).unwrap(),
        ))
        .unwrap();
        vec![
            MapExpr::conj(warp.clone(), MapExpr::circle_rotation(0.3)),
            warp,
            MapExpr::conj(h.clone(), MapExpr::disk_rotation(0.3)),
            h,
            MapExpr::conj(sh.clone(), MapExpr::sphere_rotation([0.0, 0.0, 1.0], 1.1).unwrap()),
            MapExpr::compose(sh, MapExpr::sphere_reflection([1.0, 1.0, 0.0]).unwrap()),
        ]
    }

    fn grid_for(space: Space) -> SampleGrid {
        match space {
            Space::Circle => SampleGrid::circle(500),
            Space::Disk => SampleGrid::disk(12),
            _ => SampleGrid::sphere(500),
        }
    }

    fn gap(a: &SurfacePoint, b: &SurfacePoint) -> f64 {
        crate::geometry::point_distance(crate::geometry::MetricKind::Chordal, a, b)
    }

    #[test]
    fn inverses_round_trip() {
        for f in corpus() {
            let grid = grid_for(f.space().unwrap());
            let ff = f.inverse().inverse();
            let round = MapExpr::compose(f.clone(), f.inverse());
            for x in &grid.points {
                assert!(gap(&ff.eval(x), &f.eval(x)) <= 1e-12);
                assert!(gap(&round.eval(x), x) <= 1e-9, "{f:?} at {x:?}");
            }
        }
    }

    #[test]
    fn evaluation_keeps_points_in_their_space() {
        for f in corpus() {
            for x in &grid_for(f.space().unwrap()).points {
                match f.eval(x) {
                    SurfacePoint::Disk(p) => assert!(p[0].hypot(p[1]) <= 1.0 + 1e-9),
                    SurfacePoint::Sphere(p) => assert!((vec::norm(p) - 1.0).abs() <= 1e-12),
                    SurfacePoint::Circle(t) => assert!((0.0..1.0).contains(&t)),
                }
            }
        }
    }

    #[test]
    fn stereographic_maps_fixing_origin_fix_both_poles() {
        let f = MapExpr::stereo(MapExpr::compose(
            MapExpr::radial_warp(1.7).unwrap(),
            MapExpr::disk_rotation(0.2),
        ))
        .unwrap();
        let s = f.eval_sphere([0.0, 0.0, -1.0]);
        let n = f.eval_sphere([0.0, 0.0, 1.0]);
        assert!(vec::dist3(s, [0.0, 0.0, -1.0]) < 1e-15);
        assert!(vec::dist3(n, [0.0, 0.0, 1.0]) < 1e-15);
    }

    #[test]
    fn orientation_is_multiplicative() {
        let r = MapExpr::sphere_reflection([0.0, 0.0, 1.0]).unwrap();
        let a = MapExpr::antipodal();
        assert_eq!(r.orientation(), -1);
        assert_eq!(MapExpr::compose(r.clone(), a.clone()).orientation(), 1);
        assert_eq!(r.power(3).orientation(), -1);
        assert_eq!(r.power(-2).orientation(), 1);
    }

    #[test]
    fn mixed_spaces_are_rejected() {
        let e = MapExpr::compose(MapExpr::circle_rotation(0.1), MapExpr::disk_rotation(0.1));
        assert!(matches!(e.space(), Err(Error::SpaceMismatch { .. })));
        let p = MapExpr::plane_mobius([[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert_eq!(p.space().unwrap(), Space::Plane);
        assert_eq!(MapExpr::stereo(p).unwrap().space().unwrap(), Space::Sphere);
    }
}
