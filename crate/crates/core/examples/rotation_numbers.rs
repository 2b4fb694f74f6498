//! Rotation numbers of warped rotations, by Birkhoff averages and by
//! integrating the displacement cocycle against the invariant measure.

use kerek::circle::{invariant_measure, rotation_number_birkhoff, rotation_number_integral};
use kerek::group::{CircleFamily, GroupSpec, RotationModel};
use kerek::maps::{lift_circle_map, MapExpr};

fn main() -> kerek::Result<()> {
    for a1 in [0.3, 0.6] {
        let warp = MapExpr::circle_warp(vec![a1])?;
        let family = CircleFamily::new(warp, RotationModel::Circle);
        let measure = invariant_measure(&GroupSpec::Family(family.clone()), 4096)?;
        for alpha in [1.0 / 3.0, 0.25, 0.6180339887] {
            let lift = lift_circle_map(&family.member(alpha), 4096)?;
            let birkhoff = rotation_number_birkhoff(&lift, 100_000)?;
            let integral = rotation_number_integral(&lift, &measure);
            println!(
                "a1={a1} alpha={alpha:.10}  birkhoff={:.10} (±{:.1e})  integral={integral:.10}",
                birkhoff.value, birkhoff.error
            );
        }
    }
    Ok(())
}
