use std::f64::consts::PI;

use rayon::prelude::*;

use super::{vec, Space, SurfacePoint};
use crate::error::{Error, Result};
use crate::maps::MapExpr;

/// Signed area of the spherical triangle `(a, b, c)`; positive when the
/// vertices run counter-clockwise seen from outside the sphere.
pub fn signed_triangle_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let num = vec::dot(a, vec::cross(b, c));
    let den = 1.0 + vec::dot(a, b) + vec::dot(b, c) + vec::dot(c, a);
    2.0 * num.atan2(den)
}

/// Brouwer degree of a sphere map: total signed area of the images of the
/// triangles of a subdivided icosahedron, divided by `4π`.
///
/// `mesh_resolution` is the number of subdivisions of each icosahedron edge.
pub fn map_degree(f: &MapExpr, mesh_resolution: usize) -> Result<i64> {
    let s = f.space()?;
    if s != Space::Sphere {
        return Err(Error::SpaceMismatch { expected: Space::Sphere, found: s });
    }
    if mesh_resolution < 16 {
        return Err(Error::Precondition(format!(
            "mesh_resolution {mesh_resolution} below 16"
        )));
    }
    let n = mesh_resolution;
    let total: Vec<f64> = icosahedron_faces()
        .par_iter()
        .map(|&(a, b, c)| face_area(f, a, b, c, n))
        .collect();
    let value = total.iter().sum::<f64>() / (4.0 * PI);
    let rounded = value.round();
    if (value - rounded).abs() > 0.1 {
        return Err(Error::NonIntegralDegree { value });
    }
    Ok(rounded as i64)
}

fn face_area(f: &MapExpr, a: [f64; 3], b: [f64; 3], c: [f64; 3], n: usize) -> f64 {
    let idx = |i: usize, j: usize| i * (n + 1) + j;
    let mut img = vec![[0.0; 3]; (n + 1) * (n + 1)];
    for i in 0..=n {
        for j in 0..=(n - i) {
            let (s, t) = (i as f64 / n as f64, j as f64 / n as f64);
            let p = vec::normalize(vec::add(
                a,
                vec::add(vec::scale(vec::sub(b, a), s), vec::scale(vec::sub(c, a), t)),
            ));
            img[idx(i, j)] = f
                .eval(&SurfacePoint::Sphere(p))
                .as_sphere()
                .unwrap_or(p);
        }
    }
    let mut area = 0.0;
    for i in 0..n {
        for j in 0..(n - i) {
            area += signed_triangle_area(img[idx(i, j)], img[idx(i + 1, j)], img[idx(i, j + 1)]);
            if i + j + 1 < n {
                area += signed_triangle_area(
                    img[idx(i + 1, j)],
                    img[idx(i + 1, j + 1)],
                    img[idx(i, j + 1)],
                );
            }
        }
    }
    area
}

/// Faces of the regular icosahedron, counter-clockwise seen from outside.
fn icosahedron_faces() -> Vec<([f64; 3], [f64; 3], [f64; 3])> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let verts: Vec<[f64; 3]> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|&v| vec::normalize(v))
    .collect();
    const FACES: [[usize; 3]; 20] = [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    FACES
        .iter()
        .map(|&[i, j, k]| {
            let (a, b, c) = (verts[i], verts[j], verts[k]);
            let outward = vec::dot(vec::cross(vec::sub(b, a), vec::sub(c, a)), vec::add(a, vec::add(b, c)));
            if outward > 0.0 {
                (a, b, c)
            } else {
                (a, c, b)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_antipodal() {
        assert_eq!(map_degree(&MapExpr::Identity(Space::Sphere), 16).unwrap(), 1);
        assert_eq!(map_degree(&MapExpr::Antipodal, 16).unwrap(), -1);
    }

    #[test]
    fn icosahedron_tiles_the_sphere() {
        let total: f64 = icosahedron_faces()
            .iter()
            .map(|&(a, b, c)| signed_triangle_area(a, b, c))
            .sum();
        assert!((total - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn coarse_mesh_is_rejected() {
        assert!(matches!(
            map_degree(&MapExpr::Antipodal, 8),
            Err(Error::Precondition(_))
        ));
    }
}
