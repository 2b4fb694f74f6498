//! Prefix text format for map expressions.
//!
//! ```text
//! expr := (id circle|disk|plane|sphere)
//!       | (rotC a) | (warpC a1 a2 ...) | (rotD a) | (radial b) | (shear c)
//!       | (aniso b amp) | (mobD ax ay) | (mobP ar ai br bi cr ci dr di)
//!       | (rotS (x y z) angle) | (reflS (x y z)) | (antipodal)
//!       | (stereo expr) | (conj expr expr) | (comp expr expr)
//!       | (inv expr) | (pow expr n)
//! ```
//!
//! Circle and disk angles are in turns, the sphere rotation angle in radians.
//! Printing uses the shortest representation that parses back to the same
//! `f64`, so `parse(print(e)) == e` for every expression.

use std::fmt;
use std::sync::Arc;

use super::MapExpr;
use crate::error::{Error, Result};
use crate::geometry::Space;

#[derive(Debug)]
enum Tok<'a> {
    Open(usize),
    Close(usize),
    Atom(usize, &'a str),
}

fn tokenize(s: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push(Tok::Open(i));
                i += 1;
            }
            b')' => {
                out.push(Tok::Close(i));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b'(' | b')') && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                out.push(Tok::Atom(start, &s[start..i]));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<Tok<'a>>,
    pos: usize,
    len: usize,
}

fn perr<T>(position: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Parse { position, reason: reason.into() })
}

impl<'a> Parser<'a> {
    fn here(&self) -> usize {
        match self.toks.get(self.pos) {
            Some(Tok::Open(p) | Tok::Close(p) | Tok::Atom(p, _)) => *p,
            None => self.len,
        }
    }

    fn open(&mut self) -> Result<()> {
        match self.toks.get(self.pos) {
            Some(Tok::Open(_)) => {
                self.pos += 1;
                Ok(())
            }
            _ => perr(self.here(), "expected '('"),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.toks.get(self.pos) {
            Some(Tok::Close(_)) => {
                self.pos += 1;
                Ok(())
            }
            _ => perr(self.here(), "expected ')'"),
        }
    }

    fn atom(&mut self) -> Result<(usize, &'a str)> {
        match self.toks.get(self.pos) {
            Some(Tok::Atom(p, a)) => {
                let r = (*p, *a);
                self.pos += 1;
                Ok(r)
            }
            _ => perr(self.here(), "expected an atom"),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let (p, a) = self.atom()?;
        match a.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => perr(p, format!("invalid number '{a}'")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let (p, a) = self.atom()?;
        a.parse::<i64>().or_else(|_| perr(p, format!("invalid integer '{a}'")))
    }

    fn vector(&mut self) -> Result<[f64; 3]> {
        self.open()?;
        let v = [self.number()?, self.number()?, self.number()?];
        self.close()?;
        Ok(v)
    }

    fn at_close(&self) -> bool {
        matches!(self.toks.get(self.pos), Some(Tok::Close(_)) | None)
    }

    fn expr(&mut self) -> Result<MapExpr> {
        let start = self.here();
        self.open()?;
        let (hp, head) = self.atom()?;
        let wrap = |r: Result<MapExpr>| {
            r.map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::Parse { position: start, reason: other.to_string() },
            })
        };
        let e = match head {
            "id" => {
                let (p, s) = self.atom()?;
                let space = match s {
                    "circle" => Space::Circle,
                    "disk" => Space::Disk,
                    "plane" => Space::Plane,
                    "sphere" => Space::Sphere,
                    _ => return perr(p, format!("unknown space '{s}'")),
                };
                MapExpr::Identity(space)
            }
            "rotC" => MapExpr::CircleRotation(self.number()?),
            "warpC" => {
                let mut c = Vec::new();
                while !self.at_close() {
                    c.push(self.number()?);
                }
                wrap(MapExpr::circle_warp(c))?
            }
            "rotD" => MapExpr::DiskRotation(self.number()?),
            "radial" => wrap(MapExpr::radial_warp(self.number()?))?,
            "shear" => wrap(MapExpr::angular_shear(self.number()?))?,
            "aniso" => {
                let b = self.number()?;
                wrap(MapExpr::aniso_warp(b, self.number()?))?
            }
            "mobD" => {
                let a = [self.number()?, self.number()?];
                wrap(MapExpr::disk_mobius(a))?
            }
            "mobP" => {
                let mut c = [[0.0; 2]; 4];
                for z in c.iter_mut() {
                    *z = [self.number()?, self.number()?];
                }
                wrap(MapExpr::plane_mobius(c))?
            }
            "rotS" => {
                let axis = self.vector()?;
                let angle = self.number()?;
                wrap(MapExpr::sphere_rotation(axis, angle))?
            }
            "reflS" => wrap(MapExpr::sphere_reflection(self.vector()?))?,
            "antipodal" => MapExpr::Antipodal,
            "stereo" => wrap(MapExpr::stereo(self.expr()?))?,
            "conj" => {
                let g = self.expr()?;
                MapExpr::conj(g, self.expr()?)
            }
            "comp" => {
                let f = self.expr()?;
                MapExpr::compose(f, self.expr()?)
            }
            "inv" => self.expr()?.inverse(),
            "pow" => {
                let f = self.expr()?;
                f.power(self.integer()?)
            }
            _ => return perr(hp, format!("unknown operator '{head}'")),
        };
        self.close()?;
        Ok(e)
    }
}

/// Parse a map expression and check that its spaces are consistent.
pub fn parse_map(text: &str) -> Result<MapExpr> {
    let mut p = Parser { toks: tokenize(text), pos: 0, len: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return perr(p.here(), "trailing input");
    }
    e.space().map_err(|err| Error::Parse { position: 0, reason: err.to_string() })?;
    Ok(e)
}

impl std::str::FromStr for MapExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_map(s)
    }
}

fn sub(f: &mut fmt::Formatter<'_>, e: &Arc<MapExpr>) -> fmt::Result {
    write!(f, " {e}")
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Identity(s) => write!(f, "(id {s})"),
            MapExpr::CircleRotation(a) => write!(f, "(rotC {a:?})"),
            MapExpr::CircleWarp(c) => {
                write!(f, "(warpC")?;
                for a in c {
                    write!(f, " {a:?}")?;
                }
                write!(f, ")")
            }
            MapExpr::DiskRotation(a) => write!(f, "(rotD {a:?})"),
            MapExpr::RadialWarp(b) => write!(f, "(radial {b:?})"),
            MapExpr::AngularShear(c) => write!(f, "(shear {c:?})"),
            MapExpr::AnisoWarp { beta, amp } => write!(f, "(aniso {beta:?} {amp:?})"),
            MapExpr::DiskMobius(a) => write!(f, "(mobD {:?} {:?})", a[0], a[1]),
            MapExpr::PlaneMobius(c) => {
                write!(f, "(mobP")?;
                for z in c {
                    write!(f, " {:?} {:?}", z[0], z[1])?;
                }
                write!(f, ")")
            }
            MapExpr::SphereRotation { axis, angle } => {
                write!(f, "(rotS ({:?} {:?} {:?}) {angle:?})", axis[0], axis[1], axis[2])
            }
            MapExpr::SphereReflection(n) => write!(f, "(reflS ({:?} {:?} {:?}))", n[0], n[1], n[2]),
            MapExpr::Antipodal => write!(f, "(antipodal)"),
            MapExpr::Stereo(g) => {
                write!(f, "(stereo")?;
                sub(f, g)?;
                write!(f, ")")
            }
            MapExpr::Conjugation(g, h) => {
                write!(f, "(conj")?;
                sub(f, g)?;
                sub(f, h)?;
                write!(f, ")")
            }
            MapExpr::Compose(g, h) => {
                write!(f, "(comp")?;
                sub(f, g)?;
                sub(f, h)?;
                write!(f, ")")
            }
            MapExpr::Inverse(g) => {
                write!(f, "(inv")?;
                sub(f, g)?;
                write!(f, ")")
            }
            MapExpr::Power(g, n) => {
                write!(f, "(pow")?;
                sub(f, g)?;
                write!(f, " {n})")
            }
        }
    }
}
