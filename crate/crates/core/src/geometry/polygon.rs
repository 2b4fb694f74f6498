//! Planar polylines: area, containment, crossings, Hausdorff distance.

use rayon::prelude::*;

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Signed area of a closed polygon (positive when counter-clockwise).
pub fn signed_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

/// Even-odd point-in-polygon test for a closed polygon.
pub fn point_in_polygon(p: [f64; 2], poly: &[[f64; 2]]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Winding number of a closed polygon about `p`.
pub fn winding_about(p: [f64; 2], poly: &[[f64; 2]]) -> i64 {
    let n = poly.len();
    let mut total = 0.0;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let a = [a[0] - p[0], a[1] - p[1]];
        let b = [b[0] - p[0], b[1] - p[1]];
        total += (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
    }
    (total / std::f64::consts::TAU).round() as i64
}

/// Proper intersection of the closed segments `ab` and `cd`: they cross at a
/// single point interior to both. Touching endpoints do not count.
pub fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let d1 = cross2(c, d, a);
    let d2 = cross2(c, d, b);
    let d3 = cross2(a, b, c);
    let d4 = cross2(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Number of proper crossings between an open polyline and a closed polygon.
pub fn crossing_count(path: &[[f64; 2]], poly: &[[f64; 2]]) -> usize {
    let n = poly.len();
    path.windows(2)
        .map(|s| (0..n).filter(|&j| segments_cross(s[0], s[1], poly[j], poly[(j + 1) % n])).count())
        .sum()
}

/// Pairs of non-adjacent edges of a polyline that cross. `closed` adds the
/// edge from the last vertex back to the first.
pub fn self_crossings(poly: &[[f64; 2]], closed: bool) -> usize {
    let n = poly.len();
    let edges = if closed { n } else { n.saturating_sub(1) };
    (0..edges)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            ((i + 2)..edges)
                .filter(|&j| !(closed && i == 0 && j == edges - 1))
                .filter(|&j| segments_cross(a, b, poly[j], poly[(j + 1) % n]))
                .count()
        })
        .sum()
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p[0] - a[0] - t * ab[0]).hypot(p[1] - a[1] - t * ab[1])
}

/// Distance from `p` to a closed polygon's edges.
pub fn distance_to_polygon(p: [f64; 2], poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| point_segment_distance(p, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Hausdorff distance between two closed polygons, measured from vertices
/// to edges.
pub fn hausdorff(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let ab = a.par_iter().map(|&p| distance_to_polygon(p, b)).reduce(|| 0.0, f64::max);
    let ba = b.par_iter().map(|&p| distance_to_polygon(p, a)).reduce(|| 0.0, f64::max);
    ab.max(ba)
}

/// Longest edge of a closed polygon.
pub fn max_edge(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            (a[0] - b[0]).hypot(a[1] - b[1])
        })
        .fold(0.0, f64::max)
}

pub fn diameter(points: &[[f64; 2]]) -> f64 {
    points
        .par_iter()
        .map(|a| points.iter().map(|b| (a[0] - b[0]).hypot(a[1] - b[1])).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max)
}
