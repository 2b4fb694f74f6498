use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::fixed::{fixed_point_pair, require_sphere};
use super::raster::CubeMap;
use crate::error::{Error, Result};
use crate::geometry::{centered_turns, vec, wrap_turns, SampleGrid};
use crate::group::element_order;
use crate::maps::{stereo_chart, MapExpr};
use crate::tolerances;

const SOUTH: [f64; 3] = [0.0, 0.0, -1.0];
const NORTH: [f64; 3] = [0.0, 0.0, 1.0];

/// Largest angular gap allowed between sampled closure elements.
pub const CLOSURE_GAP: f64 = 1.0 / 256.0;

/// Most iterates the closure sampling may use.
pub const CLOSURE_ITERATES: usize = 4096;

fn azimuth(p: [f64; 3]) -> f64 {
    wrap_turns(p[1].atan2(p[0]) / TAU)
}

/// Polar angle from the south pole in half turns.
fn polar(z: f64) -> f64 {
    (-z).clamp(-1.0, 1.0).acos() / PI
}

fn polar_height(s: f64) -> f64 {
    -(PI * s).cos()
}

fn from_cylinder(z: f64, phi: f64) -> [f64; 3] {
    let z = z.clamp(-1.0, 1.0);
    let s = (1.0 - z * z).sqrt();
    let a = TAU * phi;
    [s * a.cos(), s * a.sin(), z]
}

/// Interpolate linearly in height and azimuth; `forward` picks the azimuth
/// increment in `[0, 1)` instead of `(-1/2, 1/2]`.
fn cyl_lerp(a: [f64; 3], b: [f64; 3], w: f64, forward: bool) -> [f64; 3] {
    let d = azimuth(b) - azimuth(a);
    let d = if forward { wrap_turns(d) } else { centered_turns(d) };
    from_cylinder(a[2] + w * (b[2] - a[2]), azimuth(a) + w * d)
}

/// A map `T` sending the south pole to `p` and the north pole to `q`.
fn transport(p: [f64; 3], q: [f64; 3]) -> Result<MapExpr> {
    let c = vec::dot(p, SOUTH).clamp(-1.0, 1.0);
    let axis = vec::cross(p, SOUTH);
    let turn = if vec::norm(axis) > 1e-15 {
        MapExpr::sphere_rotation(axis, c.acos())?
    } else if c > 0.0 {
        MapExpr::identity(crate::geometry::Space::Sphere)
    } else {
        MapExpr::sphere_rotation([1.0, 0.0, 0.0], PI)?
    };
    let q1 = turn.eval_sphere(q);
    let to_poles = match stereo_chart(q1) {
        Some(w) if w[0].hypot(w[1]) < 1e12 => {
            // z ↦ w z / (w - z): fixes 0, sends w to infinity
            let m = MapExpr::plane_mobius([w, [0.0, 0.0], [-1.0, 0.0], w])?;
            MapExpr::compose(MapExpr::stereo(m)?, turn)
        }
        _ => turn,
    };
    Ok(to_poles.inverse())
}

/// How the closure of `⟨F⟩` is sampled.
#[derive(Debug, Clone)]
enum Closure {
    /// `F` has order `n`; `first` is the power with model angle `1/n`, and
    /// `powers[k]` the power with model angle `k/n`.
    Cyclic { n: usize, first: usize, powers: Vec<usize> },
    /// Iterates `F^j`, `j < count`, sorted by model angle `jρ mod 1`.
    Sampled { count: usize, angles: Vec<f64>, order: Vec<usize> },
}

/// Explicit conjugacy of a regular sphere map to a rotation about the z axis.
#[derive(Debug, Clone)]
pub struct SphereLinearization {
    pub fixed: ([f64; 3], [f64; 3]),
    /// Sends the poles to the fixed points.
    pub transport: MapExpr,
    /// `T⁻¹ ∘ f ∘ T`, which fixes both poles.
    pub transported: MapExpr,
    /// Rotation number in turns, in `[0, 1)`.
    pub rho: f64,
    pub period: Option<usize>,
    /// Number of closure elements used.
    pub samples: usize,
    closure: Closure,
    rows: usize,
    cols: usize,
    /// `(polar angle / π, azimuth offset)` of `H` at model polar angle
    /// `π i / rows` and azimuth `k / cols`, row-major.
    table: Vec<[f64; 2]>,
    buckets: Buckets,
}

#[derive(Debug, Clone)]
struct Buckets {
    map: CubeMap,
    cells: Vec<Vec<u32>>,
}

/// Conjugacy quality of a sphere linearization.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereLinearizationReport {
    pub rho: f64,
    pub period: Option<usize>,
    /// `sup d(H⁻¹ F H (u), R_ρ u)` over the test points (chordal, model side).
    pub defect: f64,
    /// `sup d(H⁻¹ H (u), u)`.
    pub round_trip: f64,
    pub samples: usize,
}

/// Linearize an orientation-preserving sphere map other than the identity.
///
/// The fixed points are moved to the poles, the rotation number is measured
/// on the azimuth of an orbit, and the closure of the generated group is
/// sampled: exactly when the map is periodic, by iterates whose model angles
/// fill the circle to [`CLOSURE_GAP`] otherwise. The conjugacy sends the model
/// meridian point at height `2r - 1` to the point of a fixed meridian whose
/// invariant curve bounds area `4πr` around the south pole, and extends it by
/// the sampled action. `resolution` is the number of table rows.
pub fn linearize_sphere_map(f: &MapExpr, resolution: usize) -> Result<SphereLinearization> {
    require_sphere(f)?;
    let (a, b) = fixed_point_pair(f)?;
    // deterministic order: the lower fixed point goes to the south pole
    let (p, q) = if (a[2], a[1], a[0]) <= (b[2], b[1], b[0]) { (a, b) } else { (b, a) };
    let transport = transport(p, q)?;
    let big_f = MapExpr::conj(transport.inverse(), f.clone());
    let period = element_order(&big_f, tolerances::ORDER_CAP)?;
    let rho_est = rotation_number(&big_f)?;
    let closure = match period {
        Some(n) => {
            let m = ((rho_est * n as f64).round() as usize) % n;
            let first = (1..n)
                .find(|&j| (j * m) % n == 1)
                .or(if n == 1 { Some(0) } else { None })
                .ok_or(Error::ClosureSamplingFailure { gap: 1.0 / n as f64 })?;
            let powers = (0..n).map(|k| (k * first) % n).collect();
            Closure::Cyclic { n, first, powers }
        }
        None => sample_closure(rho_est)?,
    };
    let rho = match (&closure, period) {
        (_, Some(n)) => wrap_turns(((rho_est * n as f64).round()) / n as f64),
        _ => rho_est,
    };
    let rows = resolution.max(8);
    let cols = match period {
        Some(n) => n * (2 * rows).div_ceil(n),
        None => 2 * rows,
    };
    let mut lin = SphereLinearization {
        fixed: (p, q),
        transport,
        transported: big_f,
        rho,
        period,
        samples: match &closure {
            Closure::Cyclic { n, .. } => *n,
            Closure::Sampled { count, .. } => *count,
        },
        closure,
        rows,
        cols,
        table: Vec::new(),
        buckets: Buckets { map: CubeMap::new(1), cells: Vec::new() },
    };
    lin.build_table()?;
    Ok(lin)
}

/// Mean azimuth increment along an orbit of a map fixing both poles.
fn rotation_number(big_f: &MapExpr) -> Result<f64> {
    const ITER: usize = 8192;
    let mut x = from_cylinder(0.0, 0.0);
    let mut inc = Vec::with_capacity(ITER);
    for _ in 0..ITER {
        let y = big_f.eval_sphere(x);
        inc.push(wrap_turns(azimuth(y) - azimuth(x)));
        x = y;
    }
    let (s, c) = inc.iter().fold((0.0, 0.0), |(s, c), &d| (s + (TAU * d).sin(), c + (TAU * d).cos()));
    let center = wrap_turns(s.atan2(c) / TAU);
    let unwrapped: Vec<f64> = inc.iter().map(|&d| center + centered_turns(d - center)).collect();
    let half = ITER / 2;
    let m1 = unwrapped[..half].iter().sum::<f64>() / half as f64;
    let m2 = unwrapped[half..].iter().sum::<f64>() / half as f64;
    if (m1 - m2).abs() > tolerances::DYNAMICAL {
        return Err(Error::ClosureSamplingFailure { gap: (m1 - m2).abs() });
    }
    Ok(wrap_turns((m1 + m2) / 2.0))
}

fn max_gap(sorted: &[f64]) -> f64 {
    let mut gap = 1.0 - sorted[sorted.len() - 1] + sorted[0];
    for w in sorted.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap
}

fn sample_closure(rho: f64) -> Result<Closure> {
    let angles_for = |count: usize| {
        let mut a: Vec<(f64, usize)> = (0..count).map(|j| (wrap_turns(j as f64 * rho), j)).collect();
        a.sort_by(|x, y| x.0.total_cmp(&y.0));
        a
    };
    let gap_for = |count: usize| max_gap(&angles_for(count).iter().map(|p| p.0).collect::<Vec<_>>());
    let last = gap_for(CLOSURE_ITERATES);
    if last > CLOSURE_GAP {
        return Err(Error::ClosureSamplingFailure { gap: last });
    }
    // the gap never grows with the count: bisect for the smallest count
    let (mut lo, mut hi) = (2, CLOSURE_ITERATES);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if gap_for(mid) <= CLOSURE_GAP {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let sorted = angles_for(hi);
    Ok(Closure::Sampled {
        count: hi,
        angles: sorted.iter().map(|p| p.0).collect(),
        order: sorted.iter().map(|p| p.1).collect(),
    })
}

impl SphereLinearization {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `H(r, θ)` for `θ = k / cols`, `k < cols`, where `x` is the arc point
    /// of level `r`.
    fn orbit_row(&self, x: [f64; 3], cols: usize) -> Vec<[f64; 3]> {
        let f = &self.transported;
        match &self.closure {
            Closure::Cyclic { n, first, powers } => {
                let n = *n;
                let e1 = f.power(*first as i64).eval_sphere(x);
                let per = cols / n;
                let mut out = vec![[0.0; 3]; cols];
                for s in 0..per {
                    let w = s as f64 / per as f64;
                    let base = if s == 0 { x } else { cyl_lerp(x, e1, w, true) };
                    let mut iter = vec![base; n];
                    for j in 1..n {
                        iter[j] = f.eval_sphere(iter[j - 1]);
                    }
                    for k in 0..n {
                        out[k * per + s] = iter[powers[k]];
                    }
                }
                out
            }
            Closure::Sampled { count, angles, order } => {
                let mut iter = vec![x; *count];
                for j in 1..*count {
                    iter[j] = f.eval_sphere(iter[j - 1]);
                }
                let m = angles.len();
                (0..cols)
                    .map(|k| {
                        let t = k as f64 / cols as f64;
                        // last sorted angle <= t (angles[0] = 0)
                        let i = angles.partition_point(|&a| a <= t) - 1;
                        let (a0, p0) = (angles[i], iter[order[i]]);
                        let (a1, p1) = if i + 1 < m {
                            (angles[i + 1], iter[order[i + 1]])
                        } else {
                            (1.0, iter[order[0]])
                        };
                        cyl_lerp(p0, p1, (t - a0) / (a1 - a0), false)
                    })
                    .collect()
            }
        }
    }

    /// Area around the south pole bounded by the (interpolated) invariant
    /// curve through `x`, in units of the whole sphere.
    fn level(&self, x: [f64; 3]) -> f64 {
        const K: usize = 64;
        let cols = match self.closure {
            Closure::Cyclic { n, .. } => n * K.div_ceil(n),
            Closure::Sampled { .. } => K,
        };
        let pts = self.orbit_row(x, cols);
        let mut area = 0.0;
        for i in 0..cols {
            let (a, b) = (pts[i], pts[(i + 1) % cols]);
            let dphi = TAU * centered_turns(azimuth(b) - azimuth(a));
            area += (1.0 + (a[2] + b[2]) / 2.0) * dphi;
        }
        area / (4.0 * PI)
    }

    fn build_table(&mut self) -> Result<()> {
        // the arc: the meridian of azimuth 0, parametrized by level
        const ARC: usize = 1024;
        let heights: Vec<f64> = (0..=ARC).map(|i| polar_height(i as f64 / ARC as f64)).collect();
        let mut levels: Vec<f64> = heights
            .par_iter()
            .map(|&z| self.level(from_cylinder(z, 0.0)))
            .collect();
        levels[0] = 0.0;
        levels[ARC] = 1.0;
        if levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::CrossingOrbits);
        }
        let height_at = |r: f64| {
            let i = levels.partition_point(|&l| l <= r).clamp(1, ARC);
            let w = (r - levels[i - 1]) / (levels[i] - levels[i - 1]);
            heights[i - 1] + w * (heights[i] - heights[i - 1])
        };
        let (rows, cols) = (self.rows, self.cols);
        let table: Vec<Vec<[f64; 2]>> = (0..=rows)
            .into_par_iter()
            .map(|i| {
                // model height z has level (1 + z) / 2
                let level = (1.0 + polar_height(i as f64 / rows as f64)) / 2.0;
                let x = from_cylinder(height_at(level), 0.0);
                self.orbit_row(x, cols)
                    .into_iter()
                    .enumerate()
                    .map(|(k, p)| [polar(p[2]), centered_turns(azimuth(p) - k as f64 / cols as f64)])
                    .collect()
            })
            .collect();
        let mut table = table;
        // azimuths at the poles are meaningless; borrow the adjacent rows
        table[0] = table[1].iter().map(|e| [0.0, e[1]]).collect();
        table[rows] = table[rows - 1].iter().map(|e| [1.0, e[1]]).collect();
        self.table = table.into_iter().flatten().collect();

        let map = CubeMap::new(48);
        let mut cells = vec![Vec::new(); map.len()];
        for i in 0..=rows {
            for k in 0..cols {
                let p = self.table_point(i, k);
                cells[map.pixel_of(p)].push((i * cols + k) as u32);
            }
        }
        self.buckets = Buckets { map, cells };
        Ok(())
    }

    fn table_point(&self, i: usize, k: usize) -> [f64; 3] {
        let e = self.table[i * self.cols + k];
        from_cylinder(polar_height(e[0]), k as f64 / self.cols as f64 + e[1])
    }

    fn model_point(&self, i: usize, k: usize) -> [f64; 3] {
        from_cylinder(polar_height(i as f64 / self.rows as f64), k as f64 / self.cols as f64)
    }

    /// The conjugacy on the transported side: model sphere to the sphere on
    /// which `F` fixes the poles.
    pub fn h(&self, u: [f64; 3]) -> [f64; 3] {
        let r = polar(u[2]) * self.rows as f64;
        let i = (r.floor() as usize).min(self.rows - 1);
        let fr = r - i as f64;
        let theta = azimuth(u);
        let c = theta * self.cols as f64;
        let k = (c.floor() as usize).min(self.cols - 1);
        let fc = c - k as f64;
        let k1 = (k + 1) % self.cols;
        let at = |i: usize, k: usize| self.table[i * self.cols + k];
        let (e00, e01, e10, e11) = (at(i, k), at(i, k1), at(i + 1, k), at(i + 1, k1));
        let d = |e: [f64; 2]| e00[1] + centered_turns(e[1] - e00[1]);
        let s = (1.0 - fr) * ((1.0 - fc) * e00[0] + fc * e01[0]) + fr * ((1.0 - fc) * e10[0] + fc * e11[0]);
        let off = (1.0 - fr) * ((1.0 - fc) * e00[1] + fc * d(e01)) + fr * ((1.0 - fc) * d(e10) + fc * d(e11));
        from_cylinder(polar_height(s), theta + off)
    }

    /// The full conjugacy `G = T ∘ H`: `G⁻¹ f G` is close to a rotation.
    pub fn conjugator(&self, u: [f64; 3]) -> [f64; 3] {
        self.transport.eval_sphere(self.h(u))
    }

    /// Inverse of [`SphereLinearization::h`] by Newton's method from the
    /// nearest table vertex.
    pub fn h_inv(&self, y: [f64; 3]) -> Result<[f64; 3]> {
        let seed = self.seed(y);
        let fy = vec::tangent_frame(y);
        let residual = |m: [f64; 3]| vec::gnomonic(y, fy, self.h(m));
        let norm = |v: [f64; 2]| v[0].hypot(v[1]);
        let mut m = seed;
        let mut r = residual(m);
        for _ in 0..60 {
            if norm(r) <= 1e-13 {
                break;
            }
            let fm = vec::tangent_frame(m);
            let at = |q: [f64; 2]| vec::gnomonic_inverse(m, fm, q);
            let h = 1e-7;
            let (rx, ry) = (residual(at([h, 0.0])), residual(at([0.0, h])));
            let j = [[(rx[0] - r[0]) / h, (ry[0] - r[0]) / h], [(rx[1] - r[1]) / h, (ry[1] - r[1]) / h]];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.abs() < 1e-300 {
                break;
            }
            let step = [(j[1][1] * r[0] - j[0][1] * r[1]) / det, (-j[1][0] * r[0] + j[0][0] * r[1]) / det];
            let mut lambda = 1.0;
            let mut improved = false;
            while lambda > 1e-4 {
                let next = at([-lambda * step[0], -lambda * step[1]]);
                let rn = residual(next);
                if norm(rn) < norm(r) {
                    m = next;
                    r = rn;
                    improved = true;
                    break;
                }
                lambda /= 2.0;
            }
            if !improved {
                break;
            }
        }
        let res = vec::dist3(self.h(m), y);
        if res > 1e-9 {
            return Err(Error::InversionFailure { x: y[0], y: y[1], residual: res });
        }
        Ok(m)
    }

    fn seed(&self, y: [f64; 3]) -> [f64; 3] {
        let map = self.buckets.map;
        let start = map.pixel_of(y);
        let mut ring = vec![start];
        let mut seen = vec![start];
        let mut best: Option<(f64, u32)> = None;
        for _ in 0..8 {
            for &p in &ring {
                for &v in &self.buckets.cells[p] {
                    let (i, k) = (v as usize / self.cols, v as usize % self.cols);
                    let d = vec::dist3(self.table_point(i, k), y);
                    if best.is_none_or(|b| d < b.0) {
                        best = Some((d, v));
                    }
                }
            }
            if best.is_some() {
                break;
            }
            let next: Vec<usize> = ring
                .iter()
                .flat_map(|&p| map.neighbors(p))
                .filter(|q| !seen.contains(q))
                .collect();
            seen.extend(&next);
            ring = next;
        }
        match best {
            Some((_, v)) => self.model_point(v as usize / self.cols, v as usize % self.cols),
            None => y,
        }
    }

    /// The model rotation `R_ρ` about the z axis.
    pub fn model_rotation(&self) -> MapExpr {
        MapExpr::SphereRotation { axis: NORTH, angle: TAU * self.rho }
    }

    /// Defect and round trip on a Fibonacci grid of `points` model points.
    pub fn report(&self, points: usize) -> Result<SphereLinearizationReport> {
        let grid = SampleGrid::sphere(points);
        let rot = self.model_rotation();
        let pairs: Vec<Result<(f64, f64)>> = grid
            .points
            .par_iter()
            .filter_map(|p| p.as_sphere())
            .map(|u| {
                let y = self.h(u);
                let back = self.h_inv(y)?;
                let image = self.h_inv(self.transported.eval_sphere(y))?;
                Ok((vec::dist3(image, rot.eval_sphere(u)), vec::dist3(back, u)))
            })
            .collect();
        let mut defect: f64 = 0.0;
        let mut round_trip: f64 = 0.0;
        for p in pairs {
            let (d, r) = p?;
            defect = defect.max(d);
            round_trip = round_trip.max(r);
        }
        Ok(SphereLinearizationReport {
            rho: self.rho,
            period: self.period,
            defect,
            round_trip,
            samples: self.samples,
        })
    }

    /// Rows `[model z, model azimuth (turns), x, y, z]` of the conjugacy
    /// `G` on a `rows × cols` lattice of the model sphere.
    pub fn table(&self, rows: usize, cols: usize) -> Vec<[f64; 5]> {
        let rows = rows.max(1);
        let mut out = Vec::with_capacity((rows + 1) * cols);
        for i in 0..=rows {
            let z = 2.0 * i as f64 / rows as f64 - 1.0;
            for k in 0..cols {
                let t = k as f64 / cols as f64;
                let g = self.conjugator(from_cylinder(z, t));
                out.push([z, t, g[0], g[1], g[2]]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transport_hits_both_poles() {
        let p = vec::normalize([0.3, 0.2, -0.5]);
        let q = vec::normalize([-0.1, 0.9, 0.4]);
        let t = transport(p, q).unwrap();
        assert!(vec::dist3(t.eval_sphere(SOUTH), p) < 1e-12);
        assert!(vec::dist3(t.eval_sphere(NORTH), q) < 1e-12);
    }

    #[test]
    fn rotation_is_its_own_linearization() {
        let f = MapExpr::sphere_rotation(NORTH, 1.1).unwrap();
        let lin = linearize_sphere_map(&f, 64).unwrap();
        assert!((lin.rho - 1.1 / TAU).abs() < 1e-9);
        let rep = lin.report(400).unwrap();
        assert!(rep.defect <= 1e-9, "{}", rep.defect);
        for u in [[0.6, 0.0, 0.8], [0.0, -1.0, 0.0], [0.36, 0.48, -0.8]] {
            assert!(vec::dist3(lin.conjugator(u), u) < 1e-9);
        }
    }

    #[test]
    fn periodic_warped_map_has_rational_angle() {
        let g = MapExpr::stereo(MapExpr::aniso_warp(1.2, 0.2).unwrap()).unwrap();
        let axis = vec::normalize([0.2, 0.1, 1.0]);
        let f = MapExpr::conj(g, MapExpr::sphere_rotation(axis, TAU / 6.0).unwrap());
        let lin = linearize_sphere_map(&f, 64).unwrap();
        assert_eq!(lin.period, Some(6));
        assert!((lin.rho * 6.0 - (lin.rho * 6.0).round()).abs() < 1e-12);
        let rep = lin.report(400).unwrap();
        assert!(rep.defect <= 1e-2, "{}", rep.defect);
    }

    #[test]
    fn golden_warped_map() {
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let g = MapExpr::stereo(MapExpr::disk_mobius([0.2, 0.1]).unwrap()).unwrap();
        let f = MapExpr::conj(g, MapExpr::sphere_rotation(NORTH, TAU * golden).unwrap());
        let lin = linearize_sphere_map(&f, 128).unwrap();
        assert!((lin.rho - golden).abs() < 1e-3 || (lin.rho - (1.0 - golden)).abs() < 1e-3);
        let rep = lin.report(400).unwrap();
        assert!(rep.defect <= 2e-2, "{}", rep.defect);
    }
}
