//! Numerical tolerances shared by every module.
//!
//! Three tiers cover nearly everything: algebraic identities that hold up to
//! rounding, geometric closed forms checked on grids, and dynamical limits
//! (rotation numbers, invariance of sampled sets).

/// Identities that should hold to rounding error.
pub const ALGEBRAIC: f64 = 1e-12;

/// Closed-form geometric values compared against grid evaluations.
pub const GEOMETRIC: f64 = 1e-6;

/// Limits of dynamical quantities (ergodic averages, rotation numbers).
pub const DYNAMICAL: f64 = 1e-3;

/// Round trip `f ∘ f⁻¹` on grid points.
pub const ROUND_TRIP: f64 = 1e-9;

/// Terminal cell diameter of the winding-number bisection.
pub const FIXED_POINT_CELL: f64 = 1e-9;

/// Two group elements are identified when their sup-distance is below this.
pub const DEDUP: f64 = 1e-6;

/// Largest finite group the closure enumeration will build.
pub const ORDER_CAP: usize = 120;

/// Relation checks (`σ h σ = h⁻¹`, `s g s = g`, ...) in the classifier.
pub const RELATION: f64 = 1e-3;

/// Conjugacy defects of the circle and disk linearizations.
pub const LINEARIZATION: f64 = 1e-2;

/// Displacement above which an involution is declared fixed-point free.
pub const FREE_DISPLACEMENT: f64 = 1e-2;

/// Grid cell of the disk constructions: "same orbit" means within two
/// cells, and transversal refinement stops at this gap.
pub const DISK_CELL: f64 = 1.0 / 1024.0;
