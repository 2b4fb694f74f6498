//! Constructive pieces of the classification of compact groups of
//! homeomorphisms of the sphere.
//!
//! Every homeomorphism is a [`MapExpr`]: a closed-form expression over
//! invertible primitives on the circle, the disk or the sphere. On top of that
//! expression language the crate computes
//!
//! * rotation numbers of circle maps, by Birkhoff averages and by integrating
//!   the displacement cocycle against an invariant measure ([`circle`]);
//! * fixed points, orbit curves, monotone chains, transversal arcs and the
//!   explicit conjugacy of a circle action on the disk to rotations ([`disk`]);
//! * invariant disks around fixed points, linearizations of sphere maps,
//!   Newman's displacement bounds and the type of orientation-reversing
//!   involutions ([`sphere`]);
//! * the Riemann–Hurwitz enumeration of finite rotation groups and a case
//!   classifier for compact group specifications ([`classify`]).
//!
//! The `kerek` binary wraps the same operations as subcommands ([`cli`]).

// `!(a < b)` is deliberate: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circle;
pub mod classify;
pub mod cli;
pub mod disk;
pub mod error;
pub mod geometry;
pub mod group;
pub mod maps;
pub mod sphere;
pub mod tolerances;

pub use error::{Error, Result};
pub use geometry::{Metric, MetricKind, SampleGrid, Space, SurfacePoint};
pub use group::{CircleFamily, GroupSpec, RotationModel};
pub use maps::{Lift, MapExpr};
