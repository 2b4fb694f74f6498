use thiserror::Error;

use crate::geometry::Space;

/// Every failure a computation in this crate can report.
///
/// The display form always starts with the variant name so that the CLI can
/// emit it as a machine-readable record.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("SpaceMismatch expected={expected} found={found}")]
    SpaceMismatch { expected: Space, found: Space },

    #[error("InvalidMap reason={0}")]
    InvalidMap(String),

    #[error("Parse position={position} reason={reason}")]
    Parse { position: usize, reason: String },

    #[error("NonIntegralDegree value={value}")]
    NonIntegralDegree { value: f64 },

    #[error("DegenerateFamily member={member}")]
    DegenerateFamily { member: usize },

    #[error("UnwrapFailure index={index} step={step}")]
    UnwrapFailure { index: usize, step: f64 },

    #[error("ClosureOverflow bound={bound}")]
    ClosureOverflow { bound: usize },

    #[error("InvalidGroup reason={0}")]
    InvalidGroup(String),

    #[error("NonInjectiveMeasure start={start} width={width}")]
    NonInjectiveMeasure { start: f64, width: f64 },

    #[error("AmbiguousFixedPoints x={x} y={y}")]
    AmbiguousFixedPoints { x: f64, y: f64 },

    #[error("NoInteriorFixedPoint winding={winding}")]
    NoInteriorFixedPoint { winding: i64 },

    #[error("DegenerateOrbit diameter={diameter}")]
    DegenerateOrbit { diameter: f64 },

    #[error("CrossingOrbits")]
    CrossingOrbits,

    #[error("Precondition reason={0}")]
    Precondition(String),

    #[error("RefinementStall gap={gap} rounds={rounds}")]
    RefinementStall { gap: f64, rounds: usize },

    #[error("InversionFailure x={x} y={y} residual={residual}")]
    InversionFailure { x: f64, y: f64, residual: f64 },

    #[error("ResolutionTooCoarse reason={0}")]
    ResolutionTooCoarse(String),

    #[error("FixedPointCountMismatch found={found}")]
    FixedPointCountMismatch { found: usize },

    #[error("ClosureSamplingFailure gap={gap}")]
    ClosureSamplingFailure { gap: f64 },

    #[error("NotPeriodic period={period} defect={defect}")]
    NotPeriodic { period: u32, defect: f64 },

    #[error("Inconclusive min_displacement={min_displacement}")]
    Inconclusive { min_displacement: f64 },

    #[error("UnclassifiableSpec reason={0}")]
    UnclassifiableSpec(String),

    #[error("Config reason={0}")]
    Config(String),

    #[error("Io path={path} reason={reason}")]
    Io { path: String, reason: String },
}

impl Error {
    /// The variant name, i.e. the first token of the display form.
    pub fn name(&self) -> String {
        self.to_string()
            .split_whitespace()
            .next()
            .unwrap_or_default()
            .to_string()
    }
}

pub type Result<T> = std::result::Result<T, Error>;
