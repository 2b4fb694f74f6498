use std::f64::consts::TAU;

use rayon::prelude::*;

use super::transversal::{default_schedule, transversal_arc, TransversalArc};
use super::DiskAction;
use crate::error::{Error, Result};
use crate::geometry::vec::dist2;
use crate::geometry::clamp_disk;

/// Seed table: `SEED_R × SEED_T` samples of `H`.
const SEED_R: usize = 128;
const SEED_T: usize = 256;
const BUCKETS: usize = 128;

const NEWTON_CAP: usize = 60;

/// Accepted residual `|H(u) − y|` of the inversion. Near the fixed point a
/// Hölder conjugator amplifies the fixed point's own error (~1e-10) to about
/// 1e-8, so the bound sits well above that.
const INVERSION_RESIDUAL: f64 = 1e-6;

/// The conjugacy `H(r e^{2πiθ}) = Ψ_θ(x(r))` between the rotation group and
/// a disk action, with a numerical inverse.
#[derive(Debug, Clone)]
pub struct DiskLinearization {
    pub action: DiskAction,
    pub arc: TransversalArc,
    seeds: Vec<([f64; 2], [f64; 2])>,
    buckets: Vec<Vec<u32>>,
}

/// Conjugacy defects measured on a polar grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizationReport {
    pub radial: usize,
    pub angular: usize,
    /// `(t, sup |H⁻¹ Ψ_t H (u) − R_t u|)` for each tested element.
    pub per_element: Vec<(f64, f64)>,
    pub defect: f64,
    /// `sup |H⁻¹ H (u) − u|`.
    pub round_trip: f64,
}

fn polar_point(r: f64, theta: f64) -> [f64; 2] {
    let a = TAU * theta;
    [r * a.cos(), r * a.sin()]
}

fn bucket_of(p: [f64; 2]) -> (usize, usize) {
    let f = |v: f64| (((v + 1.0) / 2.0 * BUCKETS as f64).floor().max(0.0) as usize).min(BUCKETS - 1);
    (f(p[0]), f(p[1]))
}

/// Build the transversal arc with the default chain schedule and tabulate
/// `H` for inversion.
pub fn linearize_disk_action(action: &DiskAction) -> Result<DiskLinearization> {
    let arc = transversal_arc(action, &default_schedule())?;
    let mut lin = DiskLinearization { action: action.clone(), arc, seeds: Vec::new(), buckets: Vec::new() };
    let seeds: Vec<([f64; 2], [f64; 2])> = (0..=SEED_R)
        .into_par_iter()
        .flat_map_iter(|i| {
            let r = i as f64 / SEED_R as f64;
            let x = lin.arc.at(r);
            let lin = &lin;
            let count = if i == 0 { 1 } else { SEED_T };
            (0..count).map(move |j| {
                let th = j as f64 / SEED_T as f64;
                (polar_point(r, th), lin.action.act(th, x))
            })
        })
        .collect();
    let mut buckets = vec![Vec::new(); BUCKETS * BUCKETS];
    for (k, (_, y)) in seeds.iter().enumerate() {
        let (bx, by) = bucket_of(*y);
        buckets[by * BUCKETS + bx].push(k as u32);
    }
    lin.seeds = seeds;
    lin.buckets = buckets;
    Ok(lin)
}

impl DiskLinearization {
    /// `H(u)` for a model point `u` of the closed disk.
    pub fn h(&self, u: [f64; 2]) -> [f64; 2] {
        let r = u[0].hypot(u[1]).min(1.0);
        if r == 0.0 {
            return self.arc.points[0];
        }
        let theta = u[1].atan2(u[0]) / TAU;
        self.action.act(theta, self.arc.at(r))
    }

    fn seed(&self, y: [f64; 2]) -> [f64; 2] {
        let (bx, by) = bucket_of(y);
        let mut best: Option<(f64, [f64; 2])> = None;
        for ring in 0..BUCKETS {
            let lo_x = bx.saturating_sub(ring);
            let lo_y = by.saturating_sub(ring);
            let hi_x = (bx + ring).min(BUCKETS - 1);
            let hi_y = (by + ring).min(BUCKETS - 1);
            for cy in lo_y..=hi_y {
                for cx in lo_x..=hi_x {
                    if cx != lo_x && cx != hi_x && cy != lo_y && cy != hi_y {
                        continue;
                    }
                    for &k in &self.buckets[cy * BUCKETS + cx] {
                        let (u, v) = self.seeds[k as usize];
                        let d = dist2(v, y);
                        if best.is_none_or(|b| d < b.0) {
                            best = Some((d, u));
                        }
                    }
                }
            }
            // one extra ring after the first hit covers bucket-edge effects
            if let Some((d, u)) = best {
                if d <= ring as f64 * 2.0 / BUCKETS as f64 {
                    return u;
                }
            }
        }
        best.map_or([0.0, 0.0], |b| b.1)
    }

    /// `H⁻¹(y)`: nearest tabulated vertex, then damped Newton in model
    /// coordinates with a finite-difference Jacobian.
    pub fn h_inv(&self, y: [f64; 2]) -> Result<[f64; 2]> {
        match self.newton(y, self.seed(y)) {
            Ok(u) => Ok(u),
            Err(_) => self.newton(y, self.search_seed(y)),
        }
    }

    /// The slower seed: radius from the orbit level of `y`, angle by a scan
    /// along that orbit.
    fn search_seed(&self, y: [f64; 2]) -> [f64; 2] {
        let r = (self.action.level(y) / self.arc.top_level).sqrt().min(1.0);
        let x = self.arc.at(r);
        let dist = |t: f64| dist2(self.action.act(t, x), y);
        let n = 256;
        let k = (0..n)
            .min_by(|&a, &b| dist(a as f64 / n as f64).total_cmp(&dist(b as f64 / n as f64)))
            .unwrap_or(0);
        // golden-section refinement on the bracketing cells
        let (mut lo, mut hi) = ((k as f64 - 1.0) / n as f64, (k as f64 + 1.0) / n as f64);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..60 {
            let a = hi - g * (hi - lo);
            let b = lo + g * (hi - lo);
            if dist(a) < dist(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        polar_point(r, 0.5 * (lo + hi))
    }

    fn newton(&self, y: [f64; 2], seed: [f64; 2]) -> Result<[f64; 2]> {
        let mut u = seed;
        let resid = |u: [f64; 2]| {
            let p = self.h(u);
            [p[0] - y[0], p[1] - y[1]]
        };
        let mut f = resid(u);
        let mut norm = f[0].hypot(f[1]);
        for _ in 0..NEWTON_CAP {
            if norm < 1e-14 {
                break;
            }
            // H is only Lipschitz at the center: scale the difference step
            let step = 1e-7 * u[0].hypot(u[1]).max(1e-7);
            let mut jac = [[0.0; 2]; 2];
            for (col, e) in [[1.0, 0.0], [0.0, 1.0]].iter().enumerate() {
                let mut s = step;
                let mut v = [u[0] + s * e[0], u[1] + s * e[1]];
                if v[0].hypot(v[1]) > 1.0 {
                    s = -step;
                    v = [u[0] + s * e[0], u[1] + s * e[1]];
                }
                let fv = resid(v);
                jac[0][col] = (fv[0] - f[0]) / s;
                jac[1][col] = (fv[1] - f[1]) / s;
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            if det.abs() < 1e-300 {
                break;
            }
            let du = [
                -(jac[1][1] * f[0] - jac[0][1] * f[1]) / det,
                -(-jac[1][0] * f[0] + jac[0][0] * f[1]) / det,
            ];
            let mut lambda = 1.0;
            let mut improved = false;
            for _ in 0..30 {
                let cand = clamp_disk([u[0] + lambda * du[0], u[1] + lambda * du[1]]);
                let fc = resid(cand);
                let nc = fc[0].hypot(fc[1]);
                if nc < norm {
                    u = cand;
                    f = fc;
                    norm = nc;
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if norm > INVERSION_RESIDUAL {
            return Err(Error::InversionFailure { x: y[0], y: y[1], residual: norm });
        }
        Ok(u)
    }

    /// Measure `sup |H⁻¹ Ψ_t H(u) − R_t u|` over the action's test elements
    /// on a `radial × angular` polar grid, and the round trip `H⁻¹ H`.
    pub fn report(&self, radial: usize, angular: usize) -> Result<LinearizationReport> {
        let grid: Vec<[f64; 2]> = (1..=radial)
            .flat_map(|i| {
                let r = i as f64 / radial as f64;
                (0..angular).map(move |j| polar_point(r, j as f64 / angular as f64))
            })
            .chain(std::iter::once([0.0, 0.0]))
            .collect();
        let images: Vec<[f64; 2]> = grid.par_iter().map(|&u| self.h(u)).collect();
        let round_trip = grid
            .par_iter()
            .zip(&images)
            .map(|(&u, &y)| Ok(dist2(self.h_inv(y)?, u)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let mut per_element = Vec::new();
        for (t, g) in self.action.test_elements() {
            let (c, s) = ((TAU * t).cos(), (TAU * t).sin());
            let d = grid
                .par_iter()
                .zip(&images)
                .map(|(&u, &y)| {
                    let v = self.h_inv(g.eval_disk(y))?;
                    let expected = [c * u[0] - s * u[1], s * u[0] + c * u[1]];
                    Ok(dist2(v, expected))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            per_element.push((t, d));
        }
        let defect = per_element.iter().map(|e| e.1).fold(0.0, f64::max);
        Ok(LinearizationReport { radial, angular, per_element, defect, round_trip })
    }

    /// Rows `(r, θ, u, v)` with `(u, v) = H(r e^{2πiθ})`.
    pub fn table(&self, radial: usize, angular: usize) -> Vec<[f64; 4]> {
        (0..=radial)
            .flat_map(|i| (0..angular).map(move |j| (i, j)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(i, j)| {
                let (r, th) = (i as f64 / radial as f64, j as f64 / angular as f64);
                let p = self.h(polar_point(r, th));
                [r, th, p[0], p[1]]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Space;
    use crate::group::{CircleFamily, GroupSpec, RotationModel};
    use crate::maps::MapExpr;

    #[test]
    fn rotations_are_already_linear() {
        let act = DiskAction::new(&GroupSpec::Family(CircleFamily::rotations(Space::Disk).unwrap())).unwrap();
        let lin = linearize_disk_action(&act).unwrap();
        let rep = lin.report(32, 32).unwrap();
        assert!(rep.defect <= 1e-9, "{rep:?}");
    }

    #[test]
    fn mobius_family_is_linearized() {
        let h = MapExpr::compose(MapExpr::disk_mobius([0.3, 0.1]).unwrap(), MapExpr::aniso_warp(1.3, 0.3).unwrap());
        let act = DiskAction::new(&GroupSpec::Family(CircleFamily::new(h, RotationModel::Disk))).unwrap();
        let lin = linearize_disk_action(&act).unwrap();
        let rep = lin.report(48, 48).unwrap();
        assert!(rep.defect <= 1e-2, "{rep:?}");
        assert!(rep.round_trip <= 2.0 * crate::tolerances::DISK_CELL);
    }

    #[test]
    fn cyclic_group_is_linearized() {
        let h = MapExpr::compose(MapExpr::disk_mobius([-0.1, 0.2]).unwrap(), MapExpr::aniso_warp(1.1, 0.2).unwrap());
        let g = MapExpr::conj(h, MapExpr::disk_rotation(1.0 / 6.0));
        let act = DiskAction::new(&GroupSpec::cyclic(g)).unwrap();
        let lin = linearize_disk_action(&act).unwrap();
        let rep = lin.report(32, 48).unwrap();
        assert!(rep.defect <= 1e-2, "{rep:?}");
    }
}
