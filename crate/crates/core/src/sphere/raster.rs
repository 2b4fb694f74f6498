//! Cube-map pixelization of the sphere.
//!
//! Face `f` has major axis `f / 2` with sign `+` for even `f`. Inside a face
//! the two minor coordinates `s, t ∈ [-1, 1]` are gnomonic; pixel `(i, j)`
//! covers `s ∈ [2i/N - 1, 2(i+1)/N - 1]` and likewise for `t`.

use std::collections::VecDeque;

use crate::geometry::vec;

/// Index of a pixel: `face * N² + j * N + i`.
pub type Pixel = usize;

/// Cube-map pixelization at a fixed resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeMap {
    n: usize,
}

impl CubeMap {
    pub fn new(n: usize) -> Self {
        Self { n: n.max(1) }
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        6 * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest angular size of a pixel (attained at face centers).
    pub fn pixel_angle(&self) -> f64 {
        2.0 / self.n as f64
    }

    fn split(&self, p: Pixel) -> (usize, usize, usize) {
        let nn = self.n * self.n;
        (p / nn, p % self.n, (p % nn) / self.n)
    }

    fn join(&self, face: usize, i: usize, j: usize) -> Pixel {
        face * self.n * self.n + j * self.n + i
    }

    fn cube_point(face: usize, s: f64, t: f64) -> [f64; 3] {
        let a = face / 2;
        let sign = if face.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut q = [0.0; 3];
        q[a] = sign;
        q[(a + 1) % 3] = s;
        q[(a + 2) % 3] = t;
        q
    }

    /// Pixel containing the direction `p` (need not be normalized).
    pub fn pixel_of(&self, p: [f64; 3]) -> Pixel {
        let a = (0..3)
            .max_by(|&x, &y| p[x].abs().total_cmp(&p[y].abs()))
            .unwrap_or(0);
        let face = 2 * a + usize::from(p[a] < 0.0);
        let m = p[a].abs();
        let cell = |c: f64| {
            let k = ((c / m + 1.0) / 2.0 * self.n as f64).floor();
            (k.max(0.0) as usize).min(self.n - 1)
        };
        self.join(face, cell(p[(a + 1) % 3]), cell(p[(a + 2) % 3]))
    }

    fn coord(&self, k: usize) -> f64 {
        2.0 * (k as f64 + 0.5) / self.n as f64 - 1.0
    }

    /// Unit vector through the pixel center.
    pub fn center(&self, p: Pixel) -> [f64; 3] {
        let (f, i, j) = self.split(p);
        vec::normalize(Self::cube_point(f, self.coord(i), self.coord(j)))
    }

    /// The four edge neighbors, in the order `+s, -s, +t, -t`.
    pub fn neighbors(&self, p: Pixel) -> [Pixel; 4] {
        let (f, i, j) = self.split(p);
        let n = self.n as isize;
        let step = |di: isize, dj: isize| {
            let (ni, nj) = (i as isize + di, j as isize + dj);
            if (0..n).contains(&ni) && (0..n).contains(&nj) {
                return self.join(f, ni as usize, nj as usize);
            }
            // cross the cube edge: start at the midpoint of the shared edge
            // and move half a pixel into the neighboring face
            let mut s = self.coord(i);
            let mut t = self.coord(j);
            if di != 0 {
                s = di as f64;
            } else {
                t = dj as f64;
            }
            let mut q = Self::cube_point(f, s, t);
            let a = f / 2;
            q[a] -= q[a].signum() / self.n as f64;
            self.pixel_of(q)
        };
        [step(1, 0), step(-1, 0), step(0, 1), step(0, -1)]
    }

    /// Integer cube coordinates (times `N`) of the two corners of the edge of
    /// `p` facing neighbor slot `dir` (as in [`CubeMap::neighbors`]).
    pub fn edge_corners(&self, p: Pixel, dir: usize) -> ([i64; 3], [i64; 3]) {
        let (f, i, j) = self.split(p);
        let (i, j) = (i as i64, j as i64);
        let (a, b) = match dir {
            0 => ((i + 1, j), (i + 1, j + 1)),
            1 => ((i, j), (i, j + 1)),
            2 => ((i, j + 1), (i + 1, j + 1)),
            _ => ((i, j), (i + 1, j)),
        };
        (self.corner_key(f, a), self.corner_key(f, b))
    }

    fn corner_key(&self, face: usize, (ci, cj): (i64, i64)) -> [i64; 3] {
        let n = self.n as i64;
        let a = face / 2;
        let mut k = [0; 3];
        k[a] = if face.is_multiple_of(2) { n } else { -n };
        k[(a + 1) % 3] = 2 * ci - n;
        k[(a + 2) % 3] = 2 * cj - n;
        k
    }

    /// Unit vector through an integer corner key.
    pub fn corner_point(key: [i64; 3]) -> [f64; 3] {
        vec::normalize([key[0] as f64, key[1] as f64, key[2] as f64])
    }

    /// Pixels whose centers lie within chordal distance `radius` of `c`,
    /// found by flood fill from the pixel containing `c`.
    pub fn cap(&self, c: [f64; 3], radius: f64) -> Vec<Pixel> {
        let mut seen = vec![false; self.len()];
        let start = self.pixel_of(c);
        let mut out = vec![start];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        // one extra pixel of slack keeps the fill connected across the rim
        let reach = radius + 1.5 * self.pixel_angle();
        while let Some(p) = queue.pop_front() {
            for q in self.neighbors(p) {
                if !seen[q] && vec::dist3(self.center(q), c) <= reach {
                    seen[q] = true;
                    queue.push_back(q);
                    out.push(q);
                }
            }
        }
        out.retain(|&p| vec::dist3(self.center(p), c) <= radius);
        out
    }
}

/// Occupancy bitmap over a [`CubeMap`].
#[derive(Debug, Clone, PartialEq)]
pub struct RasterMask {
    pub map: CubeMap,
    pub bits: Vec<bool>,
    /// What the mask represents, e.g. `K = union g(D), eta = ...`.
    pub provenance: String,
}

impl RasterMask {
    pub fn empty(map: CubeMap, provenance: impl Into<String>) -> Self {
        Self { map, bits: vec![false; map.len()], provenance: provenance.into() }
    }

    pub fn get(&self, p: Pixel) -> bool {
        self.bits[p]
    }

    pub fn set(&mut self, p: Pixel, v: bool) {
        self.bits[p] = v;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Whether `p`'s direction falls in a marked pixel.
    pub fn contains(&self, p: [f64; 3]) -> bool {
        self.bits[self.map.pixel_of(p)]
    }

    pub fn complement(&self, provenance: impl Into<String>) -> Self {
        Self {
            map: self.map,
            bits: self.bits.iter().map(|b| !b).collect(),
            provenance: provenance.into(),
        }
    }

    /// The 4-connected component of unmarked pixels containing `seed`.
    pub fn flood_unmarked(&self, seed: Pixel, provenance: impl Into<String>) -> Self {
        let mut out = Self::empty(self.map, provenance);
        if self.bits[seed] {
            return out;
        }
        let mut queue = VecDeque::from([seed]);
        out.bits[seed] = true;
        while let Some(p) = queue.pop_front() {
            for q in self.map.neighbors(p) {
                if !self.bits[q] && !out.bits[q] {
                    out.bits[q] = true;
                    queue.push_back(q);
                }
            }
        }
        out
    }

    /// The mask grown by one pixel in every edge direction.
    pub fn dilate(&self) -> Self {
        let mut out = self.clone();
        for p in 0..self.bits.len() {
            if self.bits[p] {
                for q in self.map.neighbors(p) {
                    out.bits[q] = true;
                }
            }
        }
        out
    }

    /// Number of 4-connected components of marked pixels.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.bits.len()];
        let mut count = 0;
        for s in 0..self.bits.len() {
            if !self.bits[s] || seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(p) = queue.pop_front() {
                for q in self.map.neighbors(p) {
                    if self.bits[q] && !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        count
    }

    /// Binary PGM image: the six faces side by side, marked pixels white.
    pub fn to_pgm(&self) -> Vec<u8> {
        let n = self.map.n;
        let mut out = format!("P5\n{} {}\n255\n", 6 * n, n).into_bytes();
        for j in (0..n).rev() {
            for f in 0..6 {
                for i in 0..n {
                    out.push(if self.bits[self.map.join(f, i, j)] { 255 } else { 0 });
                }
            }
        }
        out
    }
}
