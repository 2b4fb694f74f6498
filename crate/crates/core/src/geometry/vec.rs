//! Small fixed-size vector helpers.

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = norm(a);
    if n == 0.0 {
        a
    } else {
        scale(a, 1.0 / n)
    }
}

pub fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm(sub(a, b))
}

pub fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Rotation of `p` about the unit vector `axis` by `angle` radians (Rodrigues).
pub fn rotate(p: [f64; 3], axis: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let kxp = cross(axis, p);
    let kdp = dot(axis, p);
    [
        p[0] * c + kxp[0] * s + axis[0] * kdp * (1.0 - c),
        p[1] * c + kxp[1] * s + axis[1] * kdp * (1.0 - c),
        p[2] * c + kxp[2] * s + axis[2] * kdp * (1.0 - c),
    ]
}

/// An orthonormal pair spanning the plane orthogonal to the unit vector `n`.
pub fn tangent_frame(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = normalize(cross(n, helper));
    let e2 = cross(n, e1);
    (e1, e2)
}

/// Gnomonic chart centered at `center`: tangent-plane coordinates of `p`.
///
/// Only meaningful for `p` in the open hemisphere around `center`.
pub fn gnomonic(center: [f64; 3], frame: ([f64; 3], [f64; 3]), p: [f64; 3]) -> [f64; 2] {
    let d = dot(center, p);
    [dot(frame.0, p) / d, dot(frame.1, p) / d]
}

pub fn gnomonic_inverse(center: [f64; 3], frame: ([f64; 3], [f64; 3]), q: [f64; 2]) -> [f64; 3] {
    normalize(add(center, add(scale(frame.0, q[0]), scale(frame.1, q[1]))))
}
