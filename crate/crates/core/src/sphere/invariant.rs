use std::collections::HashMap;
use std::f64::consts::TAU;

use rayon::prelude::*;

use super::raster::{CubeMap, Pixel, RasterMask};
use crate::error::{Error, Result};
use crate::geometry::{polygon, vec, Space};
use crate::group::{GroupSpec, RotationModel};
use crate::maps::MapExpr;

/// Closed polyline on the sphere with a point of its bounded side.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanCurve {
    pub points: Vec<[f64; 3]>,
    pub witness: [f64; 3],
}

impl JordanCurve {
    fn frame(&self) -> ([f64; 3], [f64; 3]) {
        vec::tangent_frame(self.witness)
    }

    /// The curve in the gnomonic chart centered at the witness.
    pub fn chart(&self) -> Vec<[f64; 2]> {
        let frame = self.frame();
        self.points.iter().map(|&p| vec::gnomonic(self.witness, frame, p)).collect()
    }

    /// Whether the whole curve lies in the open hemisphere of the witness.
    pub fn in_chart(&self) -> bool {
        self.points.iter().all(|&p| vec::dot(p, self.witness) > 1e-3)
    }

    pub fn is_simple(&self) -> bool {
        self.in_chart() && polygon::self_crossings(&self.chart(), true) == 0
    }

    /// Whether `p` lies on the witness side.
    pub fn encloses(&self, p: [f64; 3]) -> bool {
        if vec::dot(p, self.witness) <= 0.0 {
            return false;
        }
        let q = vec::gnomonic(self.witness, self.frame(), p);
        polygon::point_in_polygon(q, &self.chart())
    }

    /// Largest chordal distance from the witness.
    pub fn radius(&self) -> f64 {
        self.points.iter().map(|&p| vec::dist3(p, self.witness)).fold(0.0, f64::max)
    }

    /// Chart Hausdorff distance between the curve and its image under `g`.
    pub fn invariance_defect(&self, g: &MapExpr) -> f64 {
        let frame = self.frame();
        let image: Vec<[f64; 2]> = self
            .points
            .iter()
            .map(|&p| vec::gnomonic(self.witness, frame, g.eval_sphere(p)))
            .collect();
        polygon::hausdorff(&self.chart(), &image)
    }

    /// Three-column text, one unit vector per line.
    pub fn to_text(&self) -> String {
        self.points
            .iter()
            .map(|p| format!("{:.12} {:.12} {:.12}\n", p[0], p[1], p[2]))
            .collect()
    }
}

/// An invariant topological disk around a fixed point.
#[derive(Debug, Clone)]
pub struct InvariantDisk {
    pub curve: JordanCurve,
    /// `K`: the union of the images of the seed disk.
    pub orbit_mask: RasterMask,
    /// `K` with its holes filled: the complement of the far component.
    pub filled_mask: RasterMask,
    /// Chordal radius of the seed disk.
    pub eta: f64,
    /// Chordal radius of the ball that contains `K`.
    pub delta: f64,
    pub epsilon: f64,
    /// Angular size of the largest pixel.
    pub pixel: f64,
}

/// Sampled access to a compact group acting on the sphere.
enum Orbits {
    Finite(Vec<MapExpr>),
    Family { conj: MapExpr, conj_inv: MapExpr, axis: [f64; 3], speed: f64 },
}

impl Orbits {
    fn new(group: &GroupSpec) -> Result<Self> {
        match group.space()? {
            Space::Sphere => {}
            found => return Err(Error::SpaceMismatch { expected: Space::Sphere, found }),
        }
        group.validate()?;
        Ok(match group {
            GroupSpec::Finite { .. } => Orbits::Finite(group.elements()?),
            GroupSpec::Family(fam) => {
                let RotationModel::Sphere { axis } = fam.model else {
                    return Err(Error::InvalidGroup("sphere family needs a sphere model".into()));
                };
                Orbits::Family {
                    conj: fam.conjugator.clone(),
                    conj_inv: fam.conjugator.inverse(),
                    axis: vec::normalize(axis),
                    speed: fam.speed as f64,
                }
            }
        })
    }

    /// Elements used to test invariance of outputs.
    fn test_elements(&self) -> Vec<MapExpr> {
        match self {
            Orbits::Finite(e) => e.clone(),
            Orbits::Family { conj, axis, speed, .. } => (0..16)
                .map(|k| {
                    let angle = TAU * speed * (k as f64 + 0.25) / 16.0;
                    MapExpr::conj(conj.clone(), MapExpr::SphereRotation { axis: *axis, angle })
                })
                .collect(),
        }
    }

    /// `max_g d(g y, x0)` over a dense sample of the group.
    fn max_distance(&self, y: [f64; 3], x0: [f64; 3]) -> f64 {
        match self {
            Orbits::Finite(e) => e.iter().map(|g| vec::dist3(g.eval_sphere(y), x0)).fold(0.0, f64::max),
            Orbits::Family { conj, conj_inv, axis, speed } => {
                let m = conj_inv.eval_sphere(y);
                (0..256)
                    .map(|k| {
                        let a = TAU * speed * k as f64 / 256.0;
                        vec::dist3(conj.eval_sphere(vec::rotate(m, *axis, a)), x0)
                    })
                    .fold(0.0, f64::max)
            }
        }
    }

    /// `min_g d(g y, x0)`: the orbit of `y` meets the ball of this radius.
    fn min_distance(&self, y: [f64; 3], x0: [f64; 3]) -> f64 {
        match self {
            Orbits::Finite(e) => e
                .iter()
                .map(|g| vec::dist3(g.eval_sphere(y), x0))
                .fold(f64::INFINITY, f64::min),
            Orbits::Family { conj, conj_inv, axis, speed } => {
                let m = conj_inv.eval_sphere(y);
                let d = |t: f64| vec::dist3(conj.eval_sphere(vec::rotate(m, *axis, TAU * speed * t)), x0);
                const COARSE: usize = 64;
                let vals: Vec<f64> = (0..COARSE).map(|k| d(k as f64 / COARSE as f64)).collect();
                let mut order: Vec<usize> = (0..COARSE).collect();
                order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
                let mut best = vals[order[0]];
                for &k in &order[..2] {
                    let h = 1.0 / COARSE as f64;
                    let t = k as f64 * h;
                    best = best.min(golden_min(&d, t - h, t + h));
                }
                best
            }
        }
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..40 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd)
}

/// Point at chordal distance `rho` from `x0` in direction `phi` (radians).
fn ring_point(x0: [f64; 3], frame: ([f64; 3], [f64; 3]), rho: f64, phi: f64) -> [f64; 3] {
    let a = 2.0 * (rho / 2.0).min(1.0).asin();
    let dir = vec::add(vec::scale(frame.0, phi.cos()), vec::scale(frame.1, phi.sin()));
    vec::add(vec::scale(x0, a.cos()), vec::scale(dir, a.sin()))
}

/// Largest `η ≤ delta` such that the images of the `η`-disk around `x0`
/// under the sampled group stay strictly inside the `delta`-ball.
fn seed_radius(orbits: &Orbits, x0: [f64; 3], delta: f64) -> f64 {
    let frame = vec::tangent_frame(x0);
    let worst = |rho: f64| {
        (0..128)
            .into_par_iter()
            .map(|k| orbits.max_distance(ring_point(x0, frame, rho, TAU * k as f64 / 128.0), x0))
            .reduce(|| 0.0, f64::max)
    };
    let margin = 1.0 - 1e-3;
    if worst(delta) < delta * margin {
        return delta;
    }
    let (mut lo, mut hi) = (0.0, delta);
    for _ in 0..40 {
        let mid = (lo + hi) / 2.0;
        if worst(mid) < delta * margin {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// An invariant topological disk inside the `epsilon`-ball around the common
/// fixed point `x0`.
///
/// The seed disk `D` of radius `η` is chosen so that every image `g(D)` stays
/// within half the target radius; the union `K` of the images is rasterized,
/// the component of the complement containing `-x0` is flood-filled, and the
/// boundary of what remains is traced along pixel edges.
pub fn invariant_disk(group: &GroupSpec, x0: [f64; 3], epsilon: f64, resolution: usize) -> Result<InvariantDisk> {
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!("epsilon {epsilon} not positive")));
    }
    let x0 = vec::normalize(x0);
    let orbits = Orbits::new(group)?;
    for g in orbits.test_elements() {
        let d = vec::dist3(g.eval_sphere(x0), x0);
        if d > 1e-9 {
            return Err(Error::Precondition(format!("x0 moved by {d:e}")));
        }
    }
    let map = CubeMap::new(resolution);
    let pixel = map.pixel_angle();
    // stay well inside the hemisphere of x0 so the chart checks make sense
    let delta = (epsilon / 2.0).min(1.2);
    let eta = seed_radius(&orbits, x0, delta);
    if eta < pixel {
        return Err(Error::ResolutionTooCoarse(format!(
            "seed radius {eta:e} below pixel size {pixel:e}"
        )));
    }

    let candidates = map.cap(x0, delta + pixel);
    let inside: Vec<bool> = candidates
        .par_iter()
        .map(|&p| orbits.min_distance(map.center(p), x0) <= eta)
        .collect();
    let mut k = RasterMask::empty(map, format!("K = union of g(D), D = ball(x0, {eta:.6})"));
    for (&p, &b) in candidates.iter().zip(&inside) {
        k.set(p, b);
    }
    let far = k.flood_unmarked(map.pixel_of(vec::scale(x0, -1.0)), "far component");
    let filled = far.complement("K with holes filled");

    let points = trace_boundary(&filled, &candidates)?;
    let curve = JordanCurve { points, witness: x0 };
    if !curve.is_simple() {
        return Err(Error::ResolutionTooCoarse("traced boundary is not simple".into()));
    }
    if !curve.encloses(x0) || curve.radius() > epsilon {
        return Err(Error::ResolutionTooCoarse("traced boundary misses the fixed point".into()));
    }
    Ok(InvariantDisk { curve, orbit_mask: k, filled_mask: filled, eta, delta, epsilon, pixel })
}

/// Trace the boundary of the marked region, which must lie among `support`
/// pixels, as the midpoints of its boundary edges in counter-clockwise order.
fn trace_boundary(mask: &RasterMask, support: &[Pixel]) -> Result<Vec<[f64; 3]>> {
    let map = mask.map;
    let mut edges: Vec<([i64; 3], [i64; 3])> = Vec::new();
    for &p in support {
        if !mask.get(p) {
            continue;
        }
        for (d, q) in map.neighbors(p).into_iter().enumerate() {
            if mask.get(q) {
                continue;
            }
            let (a, b) = map.edge_corners(p, d);
            let (pa, pb) = (CubeMap::corner_point(a), CubeMap::corner_point(b));
            let mid = vec::normalize(vec::add(pa, pb));
            let left = vec::cross(mid, vec::sub(pb, pa));
            let inward = vec::sub(map.center(p), mid);
            edges.push(if vec::dot(left, inward) > 0.0 { (a, b) } else { (b, a) });
        }
    }
    if edges.is_empty() {
        return Err(Error::ResolutionTooCoarse("empty region".into()));
    }
    let mut outgoing: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        outgoing.entry(e.0).or_default().push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut order = vec![0];
    used[0] = true;
    let mut cur = 0;
    loop {
        let (from, at) = edges[cur];
        let (pf, pa) = (CubeMap::corner_point(from), CubeMap::corner_point(at));
        let d_in = vec::sub(pa, pf);
        let outs = outgoing.get(&at).map(Vec::as_slice).unwrap_or(&[]);
        // the rightmost turn joins diagonally touching pixels into one region
        let next = outs.iter().copied().min_by(|&x, &y| {
            let turn = |e: usize| {
                let d_out = vec::sub(CubeMap::corner_point(edges[e].1), pa);
                vec::dot(pa, vec::cross(d_in, d_out)).atan2(vec::dot(d_in, d_out))
            };
            turn(x).total_cmp(&turn(y))
        });
        match next {
            Some(0) => break,
            Some(n) if !used[n] => {
                used[n] = true;
                order.push(n);
                cur = n;
            }
            _ => return Err(Error::ResolutionTooCoarse("boundary trace did not close".into())),
        }
    }
    if order.len() != edges.len() {
        return Err(Error::ResolutionTooCoarse(format!(
            "boundary has several components ({} of {} edges traced)",
            order.len(),
            edges.len()
        )));
    }
    Ok(order
        .into_iter()
        .map(|i| {
            let (a, b) = edges[i];
            vec::normalize(vec::add(CubeMap::corner_point(a), CubeMap::corner_point(b)))
        })
        .collect())
}
