//! Label compact groups given by generators and circle families, after a
//! common warping conjugation.

use kerek::classify::{classify_compact_group, CompactSpec};
use kerek::group::{CircleFamily, RotationModel};
use kerek::maps::{parse_map, MapExpr};
use kerek::Space;

fn main() -> kerek::Result<()> {
    let warp = parse_map("(stereo (aniso 1.2 0.15))")?;
    let z = RotationModel::Sphere { axis: [0.0, 0.0, 1.0] };
    let specs = [
        ("cyclic", vec![], vec!["(rotS (0 0 1) 1.2566370614359172)"]),
        ("dihedral", vec![], vec!["(rotS (0 0 1) 2.0943951023931957)", "(rotS (1 0 0) 3.141592653589793)"]),
        ("tetrahedral", vec![], vec!["(rotS (1 1 1) 2.0943951023931957)", "(rotS (1 0 0) 3.141592653589793)"]),
        ("circle", vec![z.clone()], vec![]),
        ("circle + flip", vec![z.clone()], vec!["(rotS (1 0 0) 3.141592653589793)"]),
        ("circle + antipodal", vec![z], vec!["(antipodal)"]),
    ];
    for (name, families, generators) in specs {
        let spec = CompactSpec {
            families: families.into_iter().map(|m| CircleFamily::new(MapExpr::identity(Space::Sphere), m)).collect(),
            generators: generators.into_iter().map(parse_map).collect::<kerek::Result<_>>()?,
        }
        .conjugated(&warp);
        let c = classify_compact_group(&spec)?;
        let sig = c.signature.as_ref().map(|s| s.to_string()).unwrap_or_default();
        println!("{name:20} -> {} {sig}  (max defect {:.1e})", c.label, c.max_defect());
    }
    Ok(())
}
