//! Conjugate a warped cyclic group of the circle to rotations and print how
//! far each conjugated element is from the rotation it should be.

use kerek::circle::linearize_circle_group;
use kerek::group::GroupSpec;
use kerek::maps::parse_map;

fn main() -> kerek::Result<()> {
    let g = parse_map("(conj (warpC 0.4 0.1) (rotC 0.2))")?;
    let group = GroupSpec::cyclic(g);
    let lin = linearize_circle_group(&group, 4096)?;
    for (k, e) in group.elements()?.iter().enumerate() {
        let (rho, defect) = lin.conjugacy_defect(e, 4096)?;
        println!("g^{k}: rotation by {rho:.6} turns, sup defect {defect:.2e}");
    }
    // the conjugacy itself, h(x), at a few points
    for x in [0.0, 0.25, 0.5, 0.75] {
        println!("h({x}) = {:.6}", lin.h(x));
    }
    Ok(())
}
