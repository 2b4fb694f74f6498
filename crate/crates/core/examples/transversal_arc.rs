//! A transversal arc meets every orbit curve exactly once.

use kerek::disk::{default_schedule, transversal_arc, DiskAction};
use kerek::group::{CircleFamily, GroupSpec, RotationModel};
use kerek::maps::parse_map;

fn main() -> kerek::Result<()> {
    let h = parse_map("(comp (mobD 0.3 0.1) (aniso 1.3 0.25))")?;
    let action = DiskAction::new(&GroupSpec::Family(CircleFamily::new(h, RotationModel::Disk)))?;
    let arc = transversal_arc(&action, &default_schedule())?;
    println!("{} points, largest gap {:.2e}", arc.points.len(), arc.max_gap());
    let counts = arc.crossing_counts(&action, 64, 512)?;
    let ones = counts.iter().filter(|&&c| c == 1).count();
    println!("{ones} of {} sampled orbits crossed exactly once", counts.len());
    Ok(())
}
