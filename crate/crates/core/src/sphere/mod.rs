//! Invariant disks, fixed points and linearization of sphere maps, Newman's
//! displacement bounds and the type of orientation-reversing involutions.

mod fixed;
mod invariant;
mod linearize;
mod newman;
pub mod raster;

pub use fixed::fixed_point_pair;
pub use invariant::{invariant_disk, InvariantDisk, JordanCurve};
pub use linearize::{linearize_sphere_map, SphereLinearization, SphereLinearizationReport, CLOSURE_GAP, CLOSURE_ITERATES};
pub use newman::{classify_involution, newman_check, normalized_from_chordal, InvolutionReport, InvolutionType, NewmanReport};
pub use raster::{CubeMap, RasterMask};
