//! Report, table and image writers. Every file is written to a temporary
//! sibling and renamed into place.

use std::fmt::{Display, Write as _};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), reason: e.to_string() }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = match path.file_name() {
        Some(name) => path.with_file_name(format!(".{}.tmp", name.to_string_lossy())),
        None => return Err(Error::Io { path: path.display().to_string(), reason: "not a file path".into() }),
    };
    let mut f = std::fs::File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
    f.write_all(bytes).map_err(|e| io_err(&tmp, e))?;
    f.sync_all().map_err(|e| io_err(&tmp, e))?;
    drop(f);
    std::fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

/// Collects the files of one run and writes them together.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn add(&mut self, name: &str, bytes: impl Into<Vec<u8>>) {
        self.files.push((name.to_string(), bytes.into()));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    pub fn write_all(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let mut written = Vec::new();
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            write_atomic(&path, bytes)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// `key: value` lines in insertion order.
#[derive(Debug, Default, Clone)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.line("command", command);
        r
    }

    pub fn line(&mut self, key: &str, value: impl Display) -> &mut Self {
        let _ = writeln!(self.text, "{key}: {value}");
        self
    }

    /// Floats are printed with `{:e}` at 12 significant digits, which is
    /// stable across runs and far below every tolerance in use.
    pub fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.line(key, fmt_num(value))
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.is_finite() && (1e-4..1e6).contains(&v.abs()) {
        let s = format!("{v:.12}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.11e}")
    }
}

pub fn csv<const N: usize>(header: &[&str; N], rows: &[[f64; N]]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_num(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Minimal SVG canvas over the square `[-extent, extent]²` (y up).
pub struct Svg {
    extent: f64,
    body: String,
}

impl Svg {
    pub fn new(extent: f64) -> Self {
        Svg { extent, body: String::new() }
    }

    fn xy(&self, p: [f64; 2]) -> (f64, f64) {
        let s = 250.0 / self.extent;
        (260.0 + p[0] * s, 260.0 - p[1] * s)
    }

    pub fn polyline(&mut self, points: &[[f64; 2]], closed: bool, stroke: &str, width: f64) {
        let mut d = String::new();
        for (i, &p) in points.iter().enumerate() {
            let (x, y) = self.xy(p);
            let _ = write!(d, "{}{x:.3} {y:.3}", if i == 0 { "M" } else { " L" });
        }
        if closed {
            d.push_str(" Z");
        }
        let _ = writeln!(
            self.body,
            r#"<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#
        );
    }

    pub fn dot(&mut self, p: [f64; 2], r: f64, fill: &str) {
        let (x, y) = self.xy(p);
        let _ = writeln!(self.body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r}" fill="{fill}"/>"#);
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" viewBox=\"0 0 520 520\">\n\
             <rect width=\"520\" height=\"520\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}
