//! The `kerek` command line.
//!
//! Each subcommand reads a config file (see [`config`]), runs one
//! computation and writes its outputs into `--out` (default `.`):
//! `report.txt` with `key: value` lines, plus CSV tables, SVG curves, PGM
//! masks and curve text files where relevant. On a domain error the run
//! writes `error.txt` with the error name and parameters and exits 1;
//! usage and config errors exit 2.

mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::error::Error;
use config::Config;
use output::{Outputs, Report};

#[derive(Debug, Parser)]
#[command(name = "kerek", version, about = "Compact groups of circle, disk and sphere homeomorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Grid, table or raster resolution (meaning depends on the subcommand).
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Pass threshold reported as `within_tolerance`.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Iteration count for ergodic averages.
    #[arg(long, global = true)]
    pub iterations: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Seed for sampled choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Rotation number of a circle map, or of a member of a circle family.
    Rotnum {
        #[arg(long)]
        map: PathBuf,
    },
    /// Conjugate a compact circle group to rotations.
    LinearizeCircle {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Conjugate a circle action on the disk to rotations.
    LinearizeDisk {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Invariant Jordan disks around a fixed point of a sphere group.
    InvariantDisk {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Conjugate a regular sphere map with two fixed points to a rotation.
    LinearizeSphere {
        #[arg(long)]
        map: PathBuf,
    },
    /// Displacement bounds of a periodic sphere map.
    NewmanCheck {
        #[arg(long)]
        map: PathBuf,
    },
    /// Reflection or antipodal type of a reversing involution.
    ClassifyInvolution {
        #[arg(long)]
        map: PathBuf,
    },
    /// Brouwer degree of a sphere map.
    Degree {
        #[arg(long)]
        map: PathBuf,
    },
    /// Isometry defect of the averaged metric of a finite group.
    InvariantMetric {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Riemann–Hurwitz signatures of finite rotation groups.
    ClassifyFinite {
        #[arg(long, default_value_t = 120)]
        n_max: u32,
    },
    /// Label a compact group of sphere homeomorphisms.
    ClassifyGroup {
        #[arg(long)]
        spec: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rotnum { .. } => "rotnum",
            Command::LinearizeCircle { .. } => "linearize-circle",
            Command::LinearizeDisk { .. } => "linearize-disk",
            Command::InvariantDisk { .. } => "invariant-disk",
            Command::LinearizeSphere { .. } => "linearize-sphere",
            Command::NewmanCheck { .. } => "newman-check",
            Command::ClassifyInvolution { .. } => "classify-involution",
            Command::Degree { .. } => "degree",
            Command::InvariantMetric { .. } => "invariant-metric",
            Command::ClassifyFinite { .. } => "classify-finite",
            Command::ClassifyGroup { .. } => "classify-group",
        }
    }

    fn input(&self) -> Option<&Path> {
        match self {
            Command::Rotnum { map }
            | Command::LinearizeSphere { map }
            | Command::NewmanCheck { map }
            | Command::ClassifyInvolution { map }
            | Command::Degree { map } => Some(map),
            Command::LinearizeCircle { spec }
            | Command::LinearizeDisk { spec }
            | Command::InvariantDisk { spec }
            | Command::ClassifyGroup { spec }
            | Command::InvariantMetric { spec } => Some(spec),
            Command::ClassifyFinite { .. } => None,
        }
    }
}

/// Why a run failed.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Parse { .. } => RunError::Usage(e.to_string()),
            e => RunError::Domain(e),
        }
    }
}

/// Run a parsed command and return the files it would write.
pub fn run(cli: &Cli) -> Result<Outputs, RunError> {
    let config = match cli.command.input() {
        Some(path) => {
            let cfg = Config::load(path).map_err(|e| match e {
                Error::Io { .. } => RunError::Usage(e.to_string()),
                e => RunError::from(e),
            })?;
            if cfg.is_empty() {
                return Err(RunError::Usage(format!("{}: empty config", path.display())));
            }
            cfg
        }
        None => Config::default(),
    };
    commands::dispatch(&cli.command, &cli.common, &config).map_err(RunError::from)
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("KEREK_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("KEREK_THREADS must be a positive integer, got '{v}'"))?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn error_record(command: &str, e: &Error) -> String {
    let text = e.to_string();
    let name = text.split_whitespace().next().unwrap_or("Error").to_string();
    let mut r = Report::new(command);
    r.line("status", "error");
    r.line("error", name);
    r.line("detail", text);
    r.into_string()
}

/// Entry point of the binary; returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    match run(&cli) {
        Ok(outputs) => match outputs.write_all(&cli.common.out) {
            Ok(paths) => {
                for p in paths {
                    println!("{}", p.display());
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            let mut cmd = Cli::command();
            cmd.build();
            let sub = cli.command.name();
            match cmd.find_subcommand_mut(sub) {
                Some(s) => eprintln!("{}", s.render_usage()),
                None => eprintln!("{}", cmd.render_usage()),
            }
            2
        }
        Err(RunError::Domain(e)) => {
            eprintln!("error: {e}");
            let mut out = Outputs::default();
            out.add("error.txt", error_record(cli.command.name(), &e));
            if let Err(w) = out.write_all(&cli.common.out) {
                eprintln!("error: {w}");
            }
            1
        }
    }
}
