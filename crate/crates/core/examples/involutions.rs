//! Reflections have a circle of fixed points; antipodal-type involutions
//! move every point by a definite amount.

use kerek::maps::parse_map;
use kerek::sphere::classify_involution;
use kerek::SampleGrid;

fn main() -> kerek::Result<()> {
    let grid = SampleGrid::sphere(2001);
    for text in [
        "(reflS (0 0 1))",
        "(conj (stereo (radial 1.6)) (reflS (1 2 0)))",
        "(antipodal)",
        "(conj (stereo (mobD 0.3 0.2)) (antipodal))",
    ] {
        let r = classify_involution(&parse_map(text)?, &grid)?;
        println!("{:15} min displacement {:.3e}   {text}", r.kind.to_string(), r.min_displacement);
    }
    Ok(())
}
