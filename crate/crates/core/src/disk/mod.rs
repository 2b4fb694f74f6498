//! Circle actions on the disk: fixed points, orbit curves, monotone chains,
//! transversal arcs and the conjugacy to rotations.
//!
//! All of it is driven by a [`DiskAction`], which wraps a [`GroupSpec`] on
//! the disk together with its common fixed point and a parametrization of
//! the orbits by angle.

mod chain;
mod curve;
mod fixed;
mod linearize;
mod transversal;

pub use chain::{monotone_chain, MonotoneChain};
pub use curve::{enclosure_compare, orbit_curve, Enclosure, OrbitCurve};
pub use fixed::{check_boundary_rigidity, find_fixed_point, FixedPoint, RigidityReport};
pub use linearize::{linearize_disk_action, DiskLinearization, LinearizationReport};
pub use transversal::{default_schedule, transversal_arc, TransversalArc};

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::polygon::signed_area;
use crate::geometry::{clamp_disk, wrap_turns, Space};
use crate::group::{CircleFamily, GroupSpec};
use crate::maps::MapExpr;

/// Orbit samples used by the level function.
const LEVEL_SAMPLES: usize = 64;

/// A compact group acting on the disk, parametrized by angle `t ∈ [0, 1)`.
///
/// A circle family acts exactly. A finite cyclic group is listed by model
/// angle `k/n`; between consecutive elements the action is interpolated in
/// polar coordinates about the fixed point, which makes every finite orbit
/// a closed star-shaped curve.
#[derive(Debug, Clone)]
pub enum DiskAction {
    Family {
        family: CircleFamily,
        conjugator_inv: MapExpr,
        center: [f64; 2],
    },
    Sampled {
        center: [f64; 2],
        /// `(model angle, element)`, sorted by angle, starting at `(0, Id)`.
        elements: Vec<(f64, MapExpr)>,
        /// Elements are the powers `g^k` at angles `k/n` of a cyclic group;
        /// the action then interpolates only on the first sector and moves
        /// the result by `g^k`, which makes it exactly equivariant.
        cyclic: bool,
    },
}

fn polar(c: [f64; 2], p: [f64; 2]) -> (f64, f64) {
    let d = [p[0] - c[0], p[1] - c[1]];
    (d[0].hypot(d[1]), d[1].atan2(d[0]) / TAU)
}

/// Distance from `c` to the unit circle in the direction of angle `t` turns.
fn reach(c: [f64; 2], t: f64) -> f64 {
    let u = [(TAU * t).cos(), (TAU * t).sin()];
    let b = c[0] * u[0] + c[1] * u[1];
    -b + (b * b - (c[0] * c[0] + c[1] * c[1] - 1.0)).max(0.0).sqrt()
}

/// Interpolate from `a` to `b` counter-clockwise about `c`. The radius is
/// interpolated as a fraction of the distance to the boundary along each
/// ray, so boundary points interpolate along the boundary.
fn polar_lerp(c: [f64; 2], a: [f64; 2], b: [f64; 2], w: f64) -> [f64; 2] {
    let (ra, ta) = polar(c, a);
    let (rb, tb) = polar(c, b);
    let dt = wrap_turns(tb - ta);
    let t = ta + w * dt;
    let fa = ra / reach(c, ta);
    let fb = rb / reach(c, tb);
    let r = (fa + w * (fb - fa)) * reach(c, t);
    let t = TAU * t;
    [c[0] + r * t.cos(), c[1] + r * t.sin()]
}

impl DiskAction {
    /// Validate the group and locate its fixed point.
    pub fn new(group: &GroupSpec) -> Result<Self> {
        let space = group.space()?;
        if space != Space::Disk {
            return Err(Error::SpaceMismatch { expected: Space::Disk, found: space });
        }
        group.validate()?;
        match group {
            GroupSpec::Family(fam) => {
                let golden = (5f64.sqrt() - 1.0) / 2.0;
                let center = find_fixed_point(&fam.member(golden))?.point;
                Ok(DiskAction::Family {
                    family: fam.clone(),
                    conjugator_inv: fam.conjugator.inverse(),
                    center,
                })
            }
            GroupSpec::Finite { .. } => {
                let elements = group.elements()?;
                if elements.iter().any(|e| e.orientation() < 0) {
                    return Err(Error::Precondition("orientation-reversing element on the disk".into()));
                }
                if elements.len() < 2 {
                    return Err(Error::Precondition("trivial group has no orbits".into()));
                }
                let center = find_fixed_point(&elements[1])?.point;
                Self::sampled(center, elements)
            }
        }
    }

    /// Order the elements of a finite group by the angle they move a probe
    /// point about `center`, and assign model angles `k/n`.
    fn sampled(center: [f64; 2], elements: Vec<MapExpr>) -> Result<Self> {
        let rho = 0.5 * (1.0 - center[0].hypot(center[1]));
        let probe = [center[0] + rho, center[1]];
        let mut tagged: Vec<(f64, MapExpr)> = elements
            .into_iter()
            .map(|e| {
                let (_, t) = polar(center, e.eval_disk(probe));
                (wrap_turns(t), e)
            })
            .collect();
        tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = tagged.len();
        for w in tagged.windows(2) {
            if w[1].0 - w[0].0 <= 1e-9 {
                return Err(Error::InvalidGroup("finite group acting on the disk is not cyclic".into()));
            }
        }
        Ok(DiskAction::Sampled {
            center,
            elements: tagged.into_iter().enumerate().map(|(k, (_, e))| (k as f64 / n as f64, e)).collect(),
            cyclic: true,
        })
    }

    /// A sampled action from elements already tagged with model angles.
    pub fn from_elements(center: [f64; 2], mut elements: Vec<(f64, MapExpr)>) -> Result<Self> {
        elements.sort_by(|a, b| a.0.total_cmp(&b.0));
        if elements.first().is_none_or(|e| e.0 != 0.0) {
            return Err(Error::Precondition("elements must start at angle 0".into()));
        }
        Ok(DiskAction::Sampled { center, elements, cyclic: false })
    }

    pub fn center(&self) -> [f64; 2] {
        match self {
            DiskAction::Family { center, .. } | DiskAction::Sampled { center, .. } => *center,
        }
    }

    /// Order of a finite group; `None` for a family.
    pub fn order(&self) -> Option<usize> {
        match self {
            DiskAction::Family { .. } => None,
            DiskAction::Sampled { elements, .. } => Some(elements.len()),
        }
    }

    /// `Ψ_t(x)`.
    pub fn act(&self, t: f64, x: [f64; 2]) -> [f64; 2] {
        match self {
            DiskAction::Family { family, conjugator_inv, .. } => {
                let y = conjugator_inv.eval_disk(x);
                let y = family.model_rotation(t).eval_disk(y);
                family.conjugator.eval_disk(y)
            }
            DiskAction::Sampled { center, elements, cyclic } => {
                let t = wrap_turns(t);
                let k = elements.partition_point(|e| e.0 <= t) - 1;
                let (ta, ea) = &elements[k];
                if t == *ta {
                    return ea.eval_disk(x);
                }
                let (tb, eb) = elements.get(k + 1).map_or((1.0, &elements[0].1), |e| (e.0, &e.1));
                let w = (t - ta) / (tb - ta);
                if *cyclic {
                    let first = elements[1 % elements.len()].1.eval_disk(x);
                    ea.eval_disk(clamp_disk(polar_lerp(*center, x, first, w)))
                } else {
                    clamp_disk(polar_lerp(*center, ea.eval_disk(x), eb.eval_disk(x), w))
                }
            }
        }
    }

    /// `Ψ_{k/n}(x)` for `k = 0..n`.
    pub fn orbit(&self, x: [f64; 2], n: usize) -> Vec<[f64; 2]> {
        (0..n).map(|k| self.act(k as f64 / n as f64, x)).collect()
    }

    /// Samples per orbit for the level function: a multiple of the group
    /// order so that the sampled curve is invariant.
    fn level_samples(&self) -> usize {
        match self.order() {
            None => LEVEL_SAMPLES,
            Some(n) => n * LEVEL_SAMPLES.div_ceil(n),
        }
    }

    /// Area enclosed by the orbit of `x`; increases strictly along the
    /// enclosure order.
    pub fn level(&self, x: [f64; 2]) -> f64 {
        signed_area(&self.orbit(x, self.level_samples())).abs()
    }

    /// Group elements used to measure conjugacy defects: 16 family members,
    /// or every element of a finite group.
    pub fn test_elements(&self) -> Vec<(f64, MapExpr)> {
        match self {
            DiskAction::Family { family, .. } => {
                (0..16).map(|k| {
                    let t = (k as f64 + 0.25) / 16.0;
                    (t, family.member(t))
                }).collect()
            }
            DiskAction::Sampled { elements, .. } => elements.clone(),
        }
    }
}
