use std::f64::consts::SQRT_2;

use kerek::disk::{
    check_boundary_rigidity, default_schedule, enclosure_compare, find_fixed_point, linearize_disk_action,
    monotone_chain, orbit_curve, transversal_arc, DiskAction, Enclosure,
};
use kerek::geometry::vec::dist2;
use kerek::group::{CircleFamily, GroupSpec, RotationModel};
use kerek::maps::parse_map;
use kerek::tolerances::DISK_CELL;
use kerek::{Error, MapExpr, SampleGrid, Space};

fn family(conj: &str) -> DiskAction {
    let h = parse_map(conj).unwrap();
    DiskAction::new(&GroupSpec::Family(CircleFamily::new(h, RotationModel::Disk))).unwrap()
}

fn rotations() -> DiskAction {
    DiskAction::new(&GroupSpec::Family(CircleFamily::rotations(Space::Disk).unwrap())).unwrap()
}

#[test]
fn fixed_point_examples() {
    let p = find_fixed_point(&MapExpr::disk_rotation(0.3)).unwrap().point;
    assert!(p[0].hypot(p[1]) < 1e-9);
    let h = parse_map("(comp (mobD 0.25 -0.15) (comp (shear 0.4) (radial 1.6)))").unwrap();
    let f = MapExpr::conj(h.clone(), MapExpr::disk_rotation(0.3));
    let p = find_fixed_point(&f).unwrap().point;
    assert!(dist2(p, h.eval_disk([0.0, 0.0])) < 1e-6);
    assert!(matches!(
        find_fixed_point(&MapExpr::identity(Space::Disk)),
        Err(Error::AmbiguousFixedPoints { .. })
    ));
}

#[test]
fn orbit_curve_examples() {
    let act = rotations();
    let c = orbit_curve(&act, [0.5, 0.0], 256).unwrap();
    let dev = c.points.iter().map(|p| (p[0].hypot(p[1]) - 0.5).abs()).fold(0.0, f64::max);
    assert!(dev <= 1e-9);
    assert!(c.is_simple());
    assert_eq!(c.winding().abs(), 1);

    let cyclic = DiskAction::new(&GroupSpec::cyclic(MapExpr::disk_rotation(3.0 / 8.0))).unwrap();
    let c = orbit_curve(&cyclic, [0.4, 0.1], 64).unwrap();
    assert_eq!(c.orbit.len(), 8);
    let angles: Vec<f64> = c.points.iter().map(|p| p[1].atan2(p[0]).rem_euclid(std::f64::consts::TAU)).collect();
    let start = angles[0];
    let unwrapped: Vec<f64> = angles.iter().map(|a| (a - start).rem_euclid(std::f64::consts::TAU)).collect();
    assert!(unwrapped.windows(2).all(|w| w[0] < w[1]) || unwrapped.windows(2).all(|w| w[0] > w[1] || w[1] == 0.0));
}

#[test]
fn enclosure_examples() {
    let act = rotations();
    let c3 = orbit_curve(&act, [0.3, 0.0], 256).unwrap();
    let c6 = orbit_curve(&act, [0.0, 0.6], 256).unwrap();
    assert_eq!(enclosure_compare(&c3, &c6).unwrap(), Enclosure::Inside);
    assert_eq!(enclosure_compare(&c6, &c3).unwrap(), Enclosure::Outside);
    assert_eq!(enclosure_compare(&c3, &c3).unwrap(), Enclosure::Same);

    let warped = family("(comp (aniso 1.3 0.2) (mobD 0.1 0.1))");
    let arc = transversal_arc(&warped, &default_schedule()).unwrap();
    let a = orbit_curve(&warped, arc.at(0.3), 512).unwrap();
    let b = orbit_curve(&warped, arc.at(0.31), 512).unwrap();
    assert_eq!(enclosure_compare(&a, &b).unwrap(), Enclosure::Inside);
}

#[test]
fn chain_examples() {
    let act = rotations();
    let chain = monotone_chain(&act, [0.2, 0.0], [0.8, 0.0], 0.05).unwrap();
    assert_eq!(chain.points.len(), 13);
    assert!((chain.diameter - 0.6).abs() < 1e-12);
    assert!(chain.max_step() < 0.05 + 1e-9);
    assert!(chain.levels.windows(2).all(|w| w[0] < w[1]));

    let warped = family("(comp (radial 1.5) (mobD 0.2 0.0))");
    let (x, y) = ([0.1, 0.3], [0.2, 0.35]);
    let chain = monotone_chain(&warped, x, y, 0.02).unwrap();
    let measured = chain
        .points
        .iter()
        .flat_map(|p| chain.points.iter().map(move |q| dist2(*p, *q)))
        .fold(0.0, f64::max);
    assert!(measured <= 4.0 * dist2(x, y) + 0.02);

    let same = act.act(0.3, [0.5, 0.0]);
    assert!(matches!(monotone_chain(&act, [0.5, 0.0], same, 0.05), Err(Error::Precondition(_))));
}

#[test]
fn transversal_examples() {
    let act = rotations();
    let arc = transversal_arc(&act, &default_schedule()).unwrap();
    assert!(arc.points.iter().all(|p| p[1].abs() <= 2.0 * DISK_CELL && p[0] >= -2.0 * DISK_CELL));

    // pulled back through the known conjugator, the arc meets every model
    // circle once: its model radius increases from 0 to 1
    let h = parse_map("(comp (aniso 1.4 0.15) (mobD 0.15 -0.1))").unwrap();
    let warped = DiskAction::new(&GroupSpec::Family(CircleFamily::new(h.clone(), RotationModel::Disk))).unwrap();
    let arc = transversal_arc(&warped, &default_schedule()).unwrap();
    let hinv = h.inverse();
    let radii: Vec<f64> = arc
        .points
        .iter()
        .map(|&p| {
            let q = hinv.eval_disk(p);
            q[0].hypot(q[1])
        })
        .collect();
    assert!(radii[0] < 1e-6 && (radii[radii.len() - 1] - 1.0).abs() < 1e-9);
    assert!(radii.windows(2).all(|w| w[1] > w[0]));

    let cyclic = DiskAction::new(&GroupSpec::cyclic(
        parse_map("(conj (comp (radial 1.3) (mobD 0.1 0.2)) (rotD 0.08333333333333333))").unwrap(),
    ))
    .unwrap();
    let arc = transversal_arc(&cyclic, &default_schedule()).unwrap();
    assert!(arc.crossing_counts(&cyclic, 64, 512).unwrap().iter().all(|&c| c == 1));
}

#[test]
fn linearization_examples() {
    let lin = linearize_disk_action(&rotations()).unwrap();
    assert!(lin.report(16, 16).unwrap().defect <= 1e-9);

    let act = family("(comp (radial 1.7) (shear 0.5))");
    let rep = linearize_disk_action(&act).unwrap().report(32, 32).unwrap();
    assert!(rep.defect <= 1e-2);

    let doubled = CircleFamily::new(parse_map("(radial 1.7)").unwrap(), RotationModel::Disk).with_speed(2);
    assert!(GroupSpec::Family(doubled).validate().is_err());
}

#[test]
fn rigidity_examples() {
    let grid = SampleGrid::disk(16);
    let id = check_boundary_rigidity(&MapExpr::identity(Space::Disk), &grid).unwrap();
    assert_eq!((id.boundary_defect, id.interior_defect), (0.0, 0.0));
    let quarter = check_boundary_rigidity(&MapExpr::disk_rotation(0.25), &grid).unwrap();
    assert!((quarter.boundary_defect - SQRT_2).abs() < 1e-9);
    assert!((quarter.interior_defect - SQRT_2).abs() < 1e-9);
    let warped = parse_map("(conj (comp (aniso 1.4 0.2) (mobD 0.2 0.0)) (rotD 0.16666666666666666))").unwrap();
    let r = check_boundary_rigidity(&warped, &grid).unwrap();
    assert!(r.boundary_defect > 0.1 && r.interior_defect > 0.1);
    assert!(r.interior_defect <= 3.0 * r.boundary_defect);
}
