//! Brouwer degree of sphere maps from a triangulated mesh.

use kerek::geometry::map_degree;
use kerek::maps::parse_map;

fn main() -> kerek::Result<()> {
    for text in [
        "(id sphere)",
        "(antipodal)",
        "(reflS (0 0 1))",
        "(rotS (1 1 0) 0.7)",
        "(conj (stereo (shear 0.4)) (antipodal))",
    ] {
        println!("{:2}  {text}", map_degree(&parse_map(text)?, 64)?);
    }
    Ok(())
}
