//! Riemann–Hurwitz enumeration of finite rotation groups and the case
//! classifier for compact groups of sphere homeomorphisms.

mod group;
mod hurwitz;

pub use group::{classify_compact_group, Classification, CompactSpec, GroupClassLabel};
pub use hurwitz::{
    enumerate_riemann_hurwitz, signatures_csv, signatures_table, BranchSignature, SignatureFamily,
    MAX_BRANCH_ORBITS,
};
