//! Flat `key = value` config files.
//!
//! ```text
//! # comment
//! map = (conj (warpC 0.3) (rotC 0.25))
//! include generator = maps/gen.map
//! family = sphere 0 0 1 (conj (stereo (radial 1.4)) (id sphere))
//! epsilon = 0.2
//! ```
//!
//! `include KEY = PATH` reads the value of `KEY` from a file (comments and
//! line breaks allowed), with `PATH` relative to the including config.
//! Keys may repeat only where the subcommand accepts several values
//! (`generator`, `family`); every other key is single-valued, and a key the
//! subcommand does not know is an error.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::vec;
use crate::group::{CircleFamily, GroupSpec, RotationModel};
use crate::maps::{parse_map, MapExpr};
use crate::tolerances::ORDER_CAP;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub entries: Vec<(String, String)>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

impl Config {
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut entries = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value'", no + 1)))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            let (key, value) = match lhs.strip_prefix("include") {
                Some(k) if k.starts_with(char::is_whitespace) => {
                    let path = match base {
                        Some(b) => b.join(rhs),
                        None => rhs.into(),
                    };
                    let body = std::fs::read_to_string(&path).map_err(|e| Error::Io {
                        path: path.display().to_string(),
                        reason: e.to_string(),
                    })?;
                    let joined: Vec<&str> = body.lines().map(strip_comment).filter(|l| !l.is_empty()).collect();
                    (k.trim().to_string(), joined.join(" "))
                }
                _ => (lhs.to_string(), rhs.to_string()),
            };
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(Error::Config(format!("line {}: bad key '{key}'", no + 1)));
            }
            if value.is_empty() {
                return Err(Error::Config(format!("line {}: empty value for '{key}'", no + 1)));
            }
            entries.push((key, value));
        }
        Ok(Config { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Config::parse(&text, path.parent())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reject unknown keys and repeats of single-valued keys.
    pub fn check(&self, single: &[&str], multi: &[&str]) -> Result<()> {
        for (i, (k, _)) in self.entries.iter().enumerate() {
            if multi.contains(&k.as_str()) {
                continue;
            }
            if !single.contains(&k.as_str()) {
                return Err(Error::Config(format!("unknown key '{k}'")));
            }
            if self.entries[..i].iter().any(|(j, _)| j == k) {
                return Err(Error::Config(format!("key '{k}' given twice")));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn all(&self, key: &str) -> Vec<&str> {
        self.entries.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect()
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Config(format!("missing key '{key}'")))
    }

    pub fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| Error::Config(format!("key '{key}': cannot parse '{v}'"))))
            .transpose()
    }

    pub fn map(&self, key: &str) -> Result<MapExpr> {
        parse_map(self.require(key)?)
    }

    pub fn point(&self, key: &str) -> Result<Option<[f64; 3]>> {
        self.get(key).map(|v| parse_point(key, v)).transpose()
    }

    /// `generator` and `family` entries; `order_bound` caps the closure.
    pub fn families_and_generators(&self) -> Result<(Vec<CircleFamily>, Vec<MapExpr>)> {
        let families = self.all("family").into_iter().map(parse_family).collect::<Result<Vec<_>>>()?;
        let generators = self.all("generator").into_iter().map(parse_map).collect::<Result<Vec<_>>>()?;
        Ok((families, generators))
    }

    /// A single group: one family, or a finite group from generators.
    pub fn group(&self) -> Result<GroupSpec> {
        let (mut families, generators) = self.families_and_generators()?;
        match (families.len(), generators.len()) {
            (1, 0) => Ok(GroupSpec::Family(families.remove(0))),
            (0, n) if n > 0 => Ok(GroupSpec::Finite {
                generators,
                order_bound: self.number("order_bound")?.unwrap_or(ORDER_CAP),
            }),
            _ => Err(Error::Config("expected either one 'family' or one or more 'generator' keys".into())),
        }
    }
}

fn parse_point(key: &str, v: &str) -> Result<[f64; 3]> {
    let xs: Vec<f64> = v
        .split_whitespace()
        .map(|t| t.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Config(format!("key '{key}': expected three numbers")))?;
    match xs[..] {
        [x, y, z] => Ok([x, y, z]),
        _ => Err(Error::Config(format!("key '{key}': expected three numbers"))),
    }
}

/// `circle [speed] EXPR`, `disk [speed] EXPR` or `sphere X Y Z [speed] EXPR`,
/// where `EXPR` is the conjugator.
pub fn parse_family(v: &str) -> Result<CircleFamily> {
    let open = v
        .find('(')
        .ok_or_else(|| Error::Config("family: missing conjugator expression".into()))?;
    let head: Vec<&str> = v[..open].split_whitespace().collect();
    let conj = parse_map(&v[open..])?;
    let bad = || Error::Config(format!("family: bad header '{}'", v[..open].trim()));
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let (model, rest) = match head.first().copied() {
        Some("circle") => (RotationModel::Circle, &head[1..]),
        Some("disk") => (RotationModel::Disk, &head[1..]),
        Some("sphere") if head.len() >= 4 => {
            let axis = [num(head[1])?, num(head[2])?, num(head[3])?];
            if vec::norm(axis) == 0.0 {
                return Err(bad());
            }
            (RotationModel::Sphere { axis: vec::normalize(axis) }, &head[4..])
        }
        _ => return Err(bad()),
    };
    let fam = CircleFamily::new(conj, model);
    match rest {
        [] => Ok(fam),
        [s] => Ok(fam.with_speed(s.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}
