//! Group specifications: finitely generated groups and circle families.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{sup_distance, vec, Metric, SampleGrid, Space, SurfacePoint};
use crate::maps::MapExpr;
use crate::tolerances::{DEDUP, ORDER_CAP};

/// The rotation group a [`CircleFamily`] is conjugate to.
#[derive(Debug, Clone, PartialEq)]
pub enum RotationModel {
    Circle,
    Disk,
    /// Rotations of the sphere about a unit axis.
    Sphere { axis: [f64; 3] },
}

/// `Ψ_t = g ∘ R_{speed·t} ∘ g⁻¹` for `t ∈ [0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFamily {
    pub conjugator: MapExpr,
    pub model: RotationModel,
    pub speed: i64,
}

impl CircleFamily {
    pub fn new(conjugator: MapExpr, model: RotationModel) -> Self {
        CircleFamily { conjugator, model, speed: 1 }
    }

    pub fn rotations(space: Space) -> Result<Self> {
        let model = match space {
            Space::Circle => RotationModel::Circle,
            Space::Disk => RotationModel::Disk,
            Space::Sphere => RotationModel::Sphere { axis: [0.0, 0.0, 1.0] },
            Space::Plane => return Err(Error::InvalidGroup("no rotation family on the plane".into())),
        };
        Ok(CircleFamily::new(MapExpr::identity(space), model))
    }

    pub fn with_speed(mut self, speed: i64) -> Self {
        self.speed = speed;
        self
    }

    pub fn space(&self) -> Space {
        match self.model {
            RotationModel::Circle => Space::Circle,
            RotationModel::Disk => Space::Disk,
            RotationModel::Sphere { .. } => Space::Sphere,
        }
    }

    /// The model rotation by `t` turns (not conjugated).
    pub fn model_rotation(&self, t: f64) -> MapExpr {
        let s = self.speed as f64 * t;
        match self.model {
            RotationModel::Circle => MapExpr::circle_rotation(s),
            RotationModel::Disk => MapExpr::disk_rotation(s),
            RotationModel::Sphere { axis } => MapExpr::SphereRotation {
                axis: vec::normalize(axis),
                angle: std::f64::consts::TAU * s,
            },
        }
    }

    /// `Ψ_t`.
    pub fn member(&self, t: f64) -> MapExpr {
        MapExpr::conj(self.conjugator.clone(), self.model_rotation(t))
    }

    /// Apply `Ψ_t` to a point.
    pub fn act(&self, t: f64, x: &SurfacePoint) -> SurfacePoint {
        let y = self.conjugator.inverse().eval(x);
        let y = self.model_rotation(t).eval(&y);
        self.conjugator.eval(&y)
    }
}

/// A compact group of homeomorphisms, given either by finitely many
/// generators of a finite group or by a one-parameter circle family.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    Finite { generators: Vec<MapExpr>, order_bound: usize },
    Family(CircleFamily),
}

/// Grid on which group elements are compared.
pub fn dedup_grid(space: Space) -> SampleGrid {
    match space {
        Space::Circle => SampleGrid::circle(256),
        Space::Disk | Space::Plane => SampleGrid::disk(8),
        Space::Sphere => SampleGrid::sphere(128),
    }
}

impl GroupSpec {
    pub fn finite(generators: Vec<MapExpr>) -> Self {
        GroupSpec::Finite { generators, order_bound: ORDER_CAP }
    }

    pub fn cyclic(generator: MapExpr) -> Self {
        GroupSpec::finite(vec![generator])
    }

    pub fn space(&self) -> Result<Space> {
        match self {
            GroupSpec::Family(f) => Ok(f.space()),
            GroupSpec::Finite { generators, .. } => {
                let first = generators
                    .first()
                    .ok_or_else(|| Error::InvalidGroup("no generators".into()))?
                    .space()?;
                for g in &generators[1..] {
                    let s = g.space()?;
                    if s != first {
                        return Err(Error::SpaceMismatch { expected: first, found: s });
                    }
                }
                Ok(first)
            }
        }
    }

    /// Check the structural invariants: spaces, closure within the order
    /// bound, and for families `Ψ_0 = Id`, the homomorphism property on a
    /// 16×16 parameter grid and faithfulness.
    pub fn validate(&self) -> Result<()> {
        let space = self.space()?;
        match self {
            GroupSpec::Finite { .. } => self.elements().map(|_| ()),
            GroupSpec::Family(fam) => {
                let cs = fam.conjugator.space()?;
                if cs != space && !(space == Space::Disk && cs == Space::Plane) {
                    return Err(Error::SpaceMismatch { expected: space, found: cs });
                }
                if fam.speed == 0 {
                    return Err(Error::InvalidGroup("family is constant".into()));
                }
                let grid = dedup_grid(space);
                let metric = Metric::default_for(space);
                let id = MapExpr::identity(space);
                let d0 = sup_distance(&fam.member(0.0), &id, &grid, &metric)?;
                if d0 > DEDUP {
                    return Err(Error::InvalidGroup(format!("Psi_0 differs from Id by {d0}")));
                }
                let defect = homomorphism_defect(fam, 16, &grid, &metric)?;
                if defect > DEDUP {
                    return Err(Error::InvalidGroup(format!("homomorphism defect {defect}")));
                }
                // A family with |speed| > 1 returns to Id at t = 1/|speed|.
                let kernel = (1..64)
                    .into_par_iter()
                    .map(|k| sup_distance(&fam.member(k as f64 / 64.0), &id, &grid, &metric))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .fold(f64::INFINITY, f64::min);
                if kernel <= 1e-3 {
                    return Err(Error::InvalidGroup(format!(
                        "family is not faithful (Psi_t within {kernel} of Id for some t in (0,1))"
                    )));
                }
                Ok(())
            }
        }
    }

    /// All elements of a finite group (identity first), or `n` equispaced
    /// members of a family.
    pub fn elements(&self) -> Result<Vec<MapExpr>> {
        match self {
            GroupSpec::Finite { generators, order_bound } => enumerate_closure(generators, *order_bound),
            GroupSpec::Family(f) => Ok((0..64).map(|k| f.member(k as f64 / 64.0)).collect()),
        }
    }

    pub fn sample_members(&self, n: usize) -> Result<Vec<MapExpr>> {
        match self {
            GroupSpec::Family(f) => Ok((0..n).map(|k| f.member(k as f64 / n as f64)).collect()),
            GroupSpec::Finite { .. } => self.elements(),
        }
    }
}

/// `max sup_distance(Ψ_s ∘ Ψ_t, Ψ_{s+t})` over an `n × n` parameter grid.
pub fn homomorphism_defect(fam: &CircleFamily, n: usize, grid: &SampleGrid, metric: &Metric) -> Result<f64> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let ds = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (s, t) = (i as f64 / n as f64, j as f64 / n as f64 + 0.5 / n as f64);
            let lhs = MapExpr::compose(fam.member(s), fam.member(t));
            sup_distance(&lhs, &fam.member((s + t).fract()), grid, metric)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ds.into_iter().fold(0.0, f64::max))
}

/// Breadth-first closure of a generating set under composition, with
/// elements identified when their images on [`dedup_grid`] agree to
/// [`DEDUP`]. Each element is stored as a shortest word in the generators.
pub fn enumerate_closure(generators: &[MapExpr], order_bound: usize) -> Result<Vec<MapExpr>> {
    let space = GroupSpec::Finite { generators: generators.to_vec(), order_bound }.space()?;
    let grid = dedup_grid(space);
    let metric = Metric::default_for(space);
    let images = |g: &MapExpr| -> Vec<SurfacePoint> { grid.points.iter().map(|x| g.eval(x)).collect() };
    let same = |a: &[SurfacePoint], b: &[SurfacePoint]| a.iter().zip(b).all(|(p, q)| metric.distance(p, q) <= DEDUP);

    let id = MapExpr::identity(space);
    let mut elems = vec![id.clone()];
    let mut imgs = vec![images(&id)];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for g in generators {
                let cand = if matches!(elems[i], MapExpr::Identity(_)) {
                    g.clone()
                } else {
                    MapExpr::compose(g.clone(), elems[i].clone())
                };
                let im = images(&cand);
                if imgs.iter().any(|known| same(known, &im)) {
                    continue;
                }
                if elems.len() >= order_bound {
                    return Err(Error::ClosureOverflow { bound: order_bound });
                }
                elems.push(cand);
                imgs.push(im);
                next.push(elems.len() - 1);
            }
        }
        frontier = next;
    }
    Ok(elems)
}

/// Smallest `p ≤ bound` with `f^p = Id` on the dedup grid, if any.
pub fn element_order(f: &MapExpr, bound: usize) -> Result<Option<usize>> {
    let space = f.space()?;
    let grid = dedup_grid(space);
    let metric = Metric::default_for(space);
    let mut pts = grid.points.clone();
    for p in 1..=bound {
        for x in pts.iter_mut() {
            *x = f.eval(x);
        }
        if pts.iter().zip(&grid.points).all(|(a, b)| metric.distance(a, b) <= DEDUP) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
