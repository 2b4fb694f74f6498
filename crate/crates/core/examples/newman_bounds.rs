//! Displacement bounds for periodic rotations and a warped periodic map.

use std::f64::consts::PI;

use kerek::maps::{parse_map, MapExpr};
use kerek::sphere::newman_check;
use kerek::SampleGrid;

fn main() -> kerek::Result<()> {
    let grid = SampleGrid::sphere(4001);
    for p in [2u32, 3, 5, 12] {
        let f = MapExpr::sphere_rotation([0.0, 0.0, 1.0], 2.0 * PI / p as f64)?;
        let r = newman_check(&f, p, &grid)?;
        println!(
            "p={p:2}  d(f,Id)={:.6} > 2/p={:.6}: {}   max_r={:.4} > 1: {}   chordal {:.9} vs 2 sin(π/p) {:.9}",
            r.d1,
            2.0 / p as f64,
            r.bound_2_over_p_ok,
            r.max_r,
            r.bound_unit_ok,
            r.d1_chordal,
            2.0 * (PI / p as f64).sin()
        );
    }
    let warped = parse_map("(conj (stereo (aniso 1.3 0.2)) (rotS (0 0 1) 1.2566370614359172))")?;
    let r = newman_check(&warped, 5, &grid)?;
    println!("warped p=5: d(f,Id)={:.4}, worst iterate r={} with {:.4}", r.d1, r.worst_r, r.max_r);
    Ok(())
}
