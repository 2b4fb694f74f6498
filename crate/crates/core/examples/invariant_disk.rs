//! Nested invariant Jordan disks around the fixed point of a warped rotation
//! group, written as curve text files.

use kerek::group::{CircleFamily, GroupSpec, RotationModel};
use kerek::maps::parse_map;
use kerek::sphere::invariant_disk;

fn main() -> kerek::Result<()> {
    let conj = parse_map("(stereo (comp (radial 1.5) (mobD 0.1 0.05)))")?;
    let fam = CircleFamily::new(conj.clone(), RotationModel::Sphere { axis: [0.0, 0.0, 1.0] });
    let x0 = conj.eval_sphere([0.0, 0.0, -1.0]);
    let group = GroupSpec::Family(fam.clone());
    let dir = std::env::temp_dir();
    for eps in [0.1, 0.2, 0.4] {
        let disk = invariant_disk(&group, x0, eps, 256)?;
        let worst = (0..8)
            .map(|k| disk.curve.invariance_defect(&fam.member(k as f64 / 8.0)))
            .fold(0.0, f64::max);
        let path = dir.join(format!("kerek_disk_{eps}.txt"));
        std::fs::write(&path, disk.curve.to_text()).expect("write curve");
        println!(
            "eps={eps}: eta={:.4} radius={:.4} invariance={:.2} px -> {}",
            disk.eta,
            disk.curve.radius(),
            worst / disk.pixel,
            path.display()
        );
    }
    Ok(())
}
