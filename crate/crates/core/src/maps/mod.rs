//! The closed-form expression language for homeomorphisms.

mod expr;
mod lift;
mod parse;

pub use expr::MapExpr;
pub(crate) use expr::stereo_chart;
pub use lift::{check_cocycle_relation, cocycle_value, lift_circle_map, Lift};
pub use parse::parse_map;
