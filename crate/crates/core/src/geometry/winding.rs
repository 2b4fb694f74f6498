//! Winding numbers of planar vector fields and zero location by bisection.

use std::f64::consts::{PI, TAU};

/// Axis-aligned rectangle `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl Rect {
    pub fn square(center: [f64; 2], half: f64) -> Self {
        Self {
            lo: [center[0] - half, center[1] - half],
            hi: [center[0] + half, center[1] + half],
        }
    }

    pub fn center(&self) -> [f64; 2] {
        [(self.lo[0] + self.hi[0]) / 2.0, (self.lo[1] + self.hi[1]) / 2.0]
    }

    pub fn diameter(&self) -> f64 {
        (self.hi[0] - self.lo[0]).hypot(self.hi[1] - self.lo[1])
    }

    fn corners(&self) -> [[f64; 2]; 4] {
        [
            self.lo,
            [self.hi[0], self.lo[1]],
            self.hi,
            [self.lo[0], self.hi[1]],
        ]
    }

    /// Split into four children at `center + offset`.
    fn split(&self, offset: [f64; 2]) -> [Rect; 4] {
        let c = self.center();
        let m = [c[0] + offset[0], c[1] + offset[1]];
        [
            Rect { lo: self.lo, hi: m },
            Rect { lo: [m[0], self.lo[1]], hi: [self.hi[0], m[1]] },
            Rect { lo: m, hi: self.hi },
            Rect { lo: [self.lo[0], m[1]], hi: [m[0], self.hi[1]] },
        ]
    }
}

/// Winding number of `field` along the boundary of `rect` (counter-clockwise),
/// or `None` when the field (numerically) vanishes on the boundary.
pub fn rect_winding<F>(field: &F, rect: &Rect, zero_tol: f64) -> Option<i64>
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let corners = rect.corners();
    let mut total = 0.0;
    for k in 0..4 {
        let (p, q) = (corners[k], corners[(k + 1) % 4]);
        const SAMPLES: usize = 8;
        let mut prev = p;
        let mut fprev = field(p);
        if fprev[0].hypot(fprev[1]) <= zero_tol {
            return None;
        }
        for s in 1..=SAMPLES {
            let t = s as f64 / SAMPLES as f64;
            let next = [p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t];
            let fnext = field(next);
            total += edge_turn(field, prev, next, fprev, fnext, zero_tol, 0)?;
            prev = next;
            fprev = fnext;
        }
    }
    Some((total / TAU).round() as i64)
}

fn edge_turn<F>(
    field: &F,
    a: [f64; 2],
    b: [f64; 2],
    fa: [f64; 2],
    fb: [f64; 2],
    zero_tol: f64,
    depth: usize,
) -> Option<f64>
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    if fb[0].hypot(fb[1]) <= zero_tol {
        return None;
    }
    let mut d = fb[1].atan2(fb[0]) - fa[1].atan2(fa[0]);
    while d > PI {
        d -= TAU;
    }
    while d <= -PI {
        d += TAU;
    }
    if d.abs() <= 0.5 || depth >= 40 {
        return Some(d);
    }
    let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let fm = field(m);
    Some(
        edge_turn(field, a, m, fa, fm, zero_tol, depth + 1)?
            + edge_turn(field, m, b, fm, fb, zero_tol, depth + 1)?,
    )
}

/// Why a bisection could not localize a zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BisectionFailure {
    /// The root rectangle has winding 0.
    NoWinding(i64),
    /// The field vanishes on the root boundary.
    ZeroOnBoundary,
    /// A cell with nonzero winding has no child with nonzero winding.
    Lost { diameter: f64 },
}

/// Result of a successful bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroLocation {
    pub point: [f64; 2],
    pub winding: i64,
    pub levels: usize,
    /// Number of times a second child cell also had nonzero winding.
    pub sibling_hits: usize,
}

/// Follow nested cells of nonzero winding until the cell diameter is at most
/// `min_diameter`.
pub fn bisect_zero<F>(
    field: &F,
    root: Rect,
    min_diameter: f64,
    zero_tol: f64,
) -> Result<ZeroLocation, BisectionFailure>
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let winding = match rect_winding(field, &root, zero_tol) {
        None => return Err(BisectionFailure::ZeroOnBoundary),
        Some(0) => return Err(BisectionFailure::NoWinding(0)),
        Some(w) => w,
    };
    // irrational split offsets keep zeros off the child edges
    const OFFSETS: [[f64; 2]; 4] = [
        [0.0, 0.0],
        [0.0137, -0.0089],
        [-0.0211, 0.0173],
        [0.0313, 0.0271],
    ];
    let mut cell = root;
    let mut levels = 0;
    let mut sibling_hits = 0;
    while cell.diameter() > min_diameter {
        let w = [cell.hi[0] - cell.lo[0], cell.hi[1] - cell.lo[1]];
        let mut chosen = None;
        for off in OFFSETS {
            let children = cell.split([off[0] * w[0], off[1] * w[1]]);
            let windings: Option<Vec<i64>> = children
                .iter()
                .map(|c| rect_winding(field, c, zero_tol))
                .collect();
            let Some(windings) = windings else { continue };
            let hits: Vec<usize> = (0..4).filter(|&i| windings[i] != 0).collect();
            if let Some(&first) = hits.first() {
                sibling_hits += hits.len() - 1;
                chosen = Some(children[first]);
                break;
            }
        }
        match chosen {
            Some(c) => cell = c,
            None => {
                // every split either lost the winding or hit a zero on an
                // edge: the cell already pins the zero at its resolution
                if cell.diameter() <= 1e3 * min_diameter {
                    break;
                }
                return Err(BisectionFailure::Lost { diameter: cell.diameter() });
            }
        }
        levels += 1;
    }
    Ok(ZeroLocation { point: cell.center(), winding, levels, sibling_hits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winding_of_linear_fields() {
        let rect = Rect::square([0.0, 0.0], 1.0);
        let id = |p: [f64; 2]| p;
        let conj = |p: [f64; 2]| [p[0], -p[1]];
        let square = |p: [f64; 2]| [p[0] * p[0] - p[1] * p[1], 2.0 * p[0] * p[1]];
        assert_eq!(rect_winding(&id, &rect, 0.0), Some(1));
        assert_eq!(rect_winding(&conj, &rect, 0.0), Some(-1));
        assert_eq!(rect_winding(&square, &rect, 0.0), Some(2));
        let shifted = |p: [f64; 2]| [p[0] - 3.0, p[1]];
        assert_eq!(rect_winding(&shifted, &rect, 0.0), Some(0));
    }

    #[test]
    fn bisection_finds_an_off_center_zero() {
        let z = [0.3141, -0.2718];
        let field = |p: [f64; 2]| [p[0] - z[0] - 0.2 * (p[1] - z[1]), p[1] - z[1] + 0.3 * (p[0] - z[0])];
        let loc = bisect_zero(&field, Rect::square([0.0, 0.0], 1.0), 1e-10, 0.0).unwrap();
        assert!((loc.point[0] - z[0]).abs() < 1e-10);
        assert!((loc.point[1] - z[1]).abs() < 1e-10);
        assert_eq!(loc.sibling_hits, 0);
    }
}
