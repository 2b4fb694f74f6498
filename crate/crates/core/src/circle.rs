//! Rotation numbers, invariant measures and linearization of compact circle
//! groups.
//!
//! Rotation numbers are in turns, reduced to `[0, 1)`. Compare them with
//! [`circular_distance`], never with plain subtraction.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{circular_distance, wrap_turns, Metric, SampleGrid, Space, SurfacePoint};
use crate::group::GroupSpec;
use crate::maps::{cocycle_value, lift_circle_map, Lift, MapExpr};

/// Number of Birkhoff starting points.
const STARTS: usize = 8;

/// Parameter samples for Haar averaging over a circle family.
const FAMILY_SAMPLES: usize = 256;

/// Lift table size used internally.
const LIFT_TABLE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationEstimate {
    /// In `[0, 1)`.
    pub value: f64,
    /// Spread across starting points plus `1/n`.
    pub error: f64,
}

/// `(f̃ⁿ(x̃) − x̃)/n` averaged over 8 equispaced starting points.
pub fn rotation_number_birkhoff(lift: &Lift, iterations: usize) -> Result<RotationEstimate> {
    if iterations < 1000 {
        return Err(Error::Precondition(format!("{iterations} iterations, need at least 1000")));
    }
    let n = iterations as f64;
    let raw: Vec<f64> = (0..STARTS)
        .into_par_iter()
        .map(|j| {
            let x = j as f64 / STARTS as f64;
            (lift.iterate(x, iterations) - x) / n
        })
        .collect();
    let lo = raw.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = raw.iter().sum::<f64>() / raw.len() as f64;
    Ok(RotationEstimate { value: wrap_turns(mean), error: (hi - lo) + 1.0 / n })
}

/// Convenience: lift `f` and run [`rotation_number_birkhoff`].
pub fn rotation_number(f: &MapExpr, iterations: usize) -> Result<RotationEstimate> {
    rotation_number_birkhoff(&lift_circle_map(f, LIFT_TABLE)?, iterations)
}

/// A probability measure on the circle, stored as its cumulative
/// distribution `F(k/N)`, `k = 0..=N`, extended by `F(x + 1) = F(x) + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMeasure {
    cdf: Vec<f64>,
    /// Human-readable description of the group that produced it.
    pub source: String,
}

impl InvariantMeasure {
    pub fn uniform(resolution: usize) -> Self {
        let cdf = (0..=resolution).map(|k| k as f64 / resolution as f64).collect();
        InvariantMeasure { cdf, source: "uniform".into() }
    }

    pub fn resolution(&self) -> usize {
        self.cdf.len() - 1
    }

    pub fn cdf_table(&self) -> &[f64] {
        &self.cdf
    }

    /// `F(x)` for any real `x`, linear between table nodes.
    pub fn cdf(&self, x: f64) -> f64 {
        let whole = x.floor();
        let s = (x - whole) * self.resolution() as f64;
        let i = (s.floor() as usize).min(self.resolution() - 1);
        let w = s - i as f64;
        whole + self.cdf[i] * (1.0 - w) + self.cdf[i + 1] * w
    }

    /// Generalized inverse `F⁻¹(y)` on `[0, 1)`, extended periodically.
    pub fn inverse_cdf(&self, y: f64) -> f64 {
        let whole = y.floor();
        let v = y - whole;
        let k = self.cdf.partition_point(|&c| c <= v).clamp(1, self.resolution());
        let (a, b) = (self.cdf[k - 1], self.cdf[k]);
        let w = if b > a { (v - a) / (b - a) } else { 0.0 };
        whole + (k as f64 - 1.0 + w) / self.resolution() as f64
    }

    /// `max_x |F(g(x)) − F(g(0)) − F(x)|` taken mod 1.
    pub fn invariance_defect(&self, g: &MapExpr) -> f64 {
        let n = self.resolution();
        let g0 = self.cdf(g.eval_circle(0.0));
        (0..n)
            .into_par_iter()
            .map(|k| {
                let x = k as f64 / n as f64;
                let d = self.cdf(g.eval_circle(x)) - g0 - self.cdf[k];
                circular_distance(d, 0.0)
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Elements over which the Haar average is taken: the whole finite group,
/// or a uniform parameter grid of a family (the periodic trapezoid rule).
fn haar_elements(group: &GroupSpec) -> Result<Vec<MapExpr>> {
    if group.space()? != Space::Circle {
        return Err(Error::SpaceMismatch { expected: Space::Circle, found: group.space()? });
    }
    group.sample_members(FAMILY_SAMPLES)
}

/// The average of the pushforwards of Lebesgue measure under the group.
///
/// For one element `g` the pushforward has CDF `L(x) − L(0)` where `L` is a
/// lift of `g⁻¹`; the measure returned is the mean of these.
pub fn invariant_measure(group: &GroupSpec, resolution: usize) -> Result<InvariantMeasure> {
    if resolution < 16 {
        return Err(Error::Precondition(format!("resolution {resolution} below 16")));
    }
    let elements = haar_elements(group)?;
    let table = resolution.max(1024);
    let parts = elements
        .par_iter()
        .map(|g| {
            let l = lift_circle_map(&g.inverse(), table)?;
            let l0 = l.eval(0.0);
            Ok((0..=resolution).map(|k| l.eval(k as f64 / resolution as f64) - l0).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let m = parts.len() as f64;
    let mut cdf = vec![0.0; resolution + 1];
    for p in &parts {
        for (c, v) in cdf.iter_mut().zip(p) {
            *c += v / m;
        }
    }
    cdf[0] = 0.0;
    cdf[resolution] = 1.0;
    // Rounding could break monotonicity by an ulp.
    for k in 1..=resolution {
        if cdf[k] < cdf[k - 1] {
            cdf[k] = cdf[k - 1];
        }
    }
    let source = match group {
        GroupSpec::Finite { .. } => format!("finite group of order {}", elements.len()),
        GroupSpec::Family(_) => format!("circle family, {FAMILY_SAMPLES} parameter samples"),
    };
    Ok(InvariantMeasure { cdf, source })
}

/// `∫ φ_f̃ dμ`, by midpoint quadrature against the CDF table.
pub fn rotation_number_integral(lift: &Lift, measure: &InvariantMeasure) -> f64 {
    let n = measure.resolution();
    let total: f64 = (0..n)
        .into_par_iter()
        .map(|k| {
            let mid = (k as f64 + 0.5) / n as f64;
            cocycle_value(lift, mid) * (measure.cdf[k + 1] - measure.cdf[k])
        })
        .sum();
    wrap_turns(total)
}

/// Largest circular distance between `ρ(f∘g)` and `ρ(f) + ρ(g)` over
/// sampled pairs of group elements.
pub fn check_morphism(group: &GroupSpec, samples: usize, iterations: usize) -> Result<f64> {
    if group.space()? != Space::Circle {
        return Err(Error::SpaceMismatch { expected: Space::Circle, found: group.space()? });
    }
    let pairs: Vec<(MapExpr, MapExpr)> = match group {
        GroupSpec::Family(fam) => {
            // Low-discrepancy parameter pairs.
            let golden = (5f64.sqrt() - 1.0) / 2.0;
            let silver = 2f64.sqrt() - 1.0;
            (1..=samples)
                .map(|i| {
                    let s = (i as f64 * golden).fract();
                    let t = (i as f64 * silver).fract();
                    (fam.member(s), fam.member(t))
                })
                .collect()
        }
        GroupSpec::Finite { .. } => {
            let el = group.elements()?;
            let all: Vec<_> = el.iter().flat_map(|a| el.iter().map(move |b| (a.clone(), b.clone()))).collect();
            let step = (all.len() / samples.max(1)).max(1);
            all.into_iter().step_by(step).take(samples).collect()
        }
    };
    let defects = pairs
        .iter()
        .map(|(f, g)| {
            let rf = rotation_number(f, iterations)?.value;
            let rg = rotation_number(g, iterations)?.value;
            let rfg = rotation_number(&MapExpr::compose(f.clone(), g.clone()), iterations)?.value;
            Ok(circular_distance(rfg, rf + rg))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(defects.into_iter().fold(0.0, f64::max))
}

/// A conjugacy `h = F` taking a compact circle group to rotations.
#[derive(Debug, Clone)]
pub struct CircleLinearization {
    pub measure: InvariantMeasure,
}

impl CircleLinearization {
    pub fn h(&self, x: f64) -> f64 {
        wrap_turns(self.measure.cdf(x))
    }

    pub fn h_inv(&self, y: f64) -> f64 {
        wrap_turns(self.measure.inverse_cdf(y))
    }

    /// `h ∘ g ∘ h⁻¹` at `y`.
    pub fn conjugate(&self, g: &MapExpr, y: f64) -> f64 {
        self.h(g.eval_circle(self.h_inv(y)))
    }

    /// Rotation angle of `g` measured by the invariant measure, and the sup
    /// distance of `h∘g∘h⁻¹` to that rotation on a `resolution` grid, in the
    /// default circle metric.
    pub fn conjugacy_defect(&self, g: &MapExpr, resolution: usize) -> Result<(f64, f64)> {
        let lift = lift_circle_map(g, LIFT_TABLE)?;
        let rho = rotation_number_integral(&lift, &self.measure);
        let metric = Metric::default_for(Space::Circle);
        let grid = SampleGrid::circle(resolution);
        let d = grid
            .points
            .par_iter()
            .map(|p| {
                let y = p.as_circle().unwrap_or(0.0);
                metric.distance(&SurfacePoint::circle(self.conjugate(g, y)), &SurfacePoint::circle(y + rho))
            })
            .reduce(|| 0.0, f64::max);
        Ok((rho, d))
    }
}

/// Conjugate a compact circle group to a group of rotations, with the
/// invariant-measure CDF as the conjugacy.
pub fn linearize_circle_group(group: &GroupSpec, resolution: usize) -> Result<CircleLinearization> {
    let measure = invariant_measure(group, resolution)?;
    let n = measure.resolution();
    let mut k = 0;
    while k < n {
        if measure.cdf[k + 1] - measure.cdf[k] <= 0.0 {
            let start = k;
            while k < n && measure.cdf[k + 1] - measure.cdf[k] <= 0.0 {
                k += 1;
            }
            return Err(Error::NonInjectiveMeasure {
                start: start as f64 / n as f64,
                width: (k - start) as f64 / n as f64,
            });
        }
        k += 1;
    }
    Ok(CircleLinearization { measure })
}
