//! Linearize a warped circle action on the disk: build the transversal arc,
//! then compare H⁻¹ Ψ_t H with the rotation R_t on a polar grid.

use kerek::disk::{linearize_disk_action, DiskAction};
use kerek::group::{CircleFamily, GroupSpec, RotationModel};
use kerek::maps::parse_map;

fn main() -> kerek::Result<()> {
    let h = parse_map("(comp (aniso 1.4 0.3) (mobD 0.2 -0.1))")?;
    let action = DiskAction::new(&GroupSpec::Family(CircleFamily::new(h, RotationModel::Disk)))?;
    let lin = linearize_disk_action(&action)?;
    println!("fixed point {:?}, arc with {} points", action.center(), lin.arc.points.len());
    let report = lin.report(32, 32)?;
    for (t, d) in &report.per_element {
        println!("t={t:.4}  sup|H⁻¹Ψ_tH − R_t| = {d:.2e}");
    }
    println!("round trip {:.2e}", report.round_trip);
    Ok(())
}
