use std::collections::BTreeSet;

use kerek::classify::{
    classify_compact_group, enumerate_riemann_hurwitz, signatures_csv, BranchSignature, CompactSpec, GroupClassLabel,
    SignatureFamily,
};
use kerek::group::{CircleFamily, RotationModel};
use kerek::maps::parse_map;
use kerek::{MapExpr, Space};

fn closed_form(n_max: u32) -> BTreeSet<(u32, Vec<u32>)> {
    let mut s = BTreeSet::new();
    s.insert((1, vec![]));
    for n in 2..=n_max {
        s.insert((n, vec![n, n]));
    }
    for m in 2..=n_max / 2 {
        s.insert((2 * m, vec![2, 2, m]));
    }
    for (n, nus) in [(12, vec![2, 3, 3]), (24, vec![2, 3, 4]), (60, vec![2, 3, 5])] {
        if n <= n_max {
            s.insert((n, nus));
        }
    }
    s
}

fn as_set(sigs: &[BranchSignature]) -> BTreeSet<(u32, Vec<u32>)> {
    sigs.iter().map(|s| (s.order, s.nus.clone())).collect()
}

#[test]
fn enumeration_matches_the_closed_form() {
    assert_eq!(as_set(&enumerate_riemann_hurwitz(1)), closed_form(1));
    assert_eq!(as_set(&enumerate_riemann_hurwitz(12)), closed_form(12));
    let sixty = enumerate_riemann_hurwitz(60);
    assert_eq!(as_set(&sixty), closed_form(60));
    assert!(sixty.iter().any(|s| s.order == 60 && s.nus == [2, 3, 5]));
    assert!(sixty.iter().all(|s| s.family().is_some()));
    for s in &sixty {
        assert!(s.satisfies_riemann_hurwitz());
        assert!(s.order == 1 || s.nus.len() <= 3);
    }
}

#[test]
fn golden_table_for_order_120() {
    let sigs = enumerate_riemann_hurwitz(120);
    assert_eq!(signatures_csv(&sigs), include_str!("data/signatures_120.csv"));
}

#[test]
fn non_solutions_are_rejected() {
    assert!(!BranchSignature::new(6, vec![2, 3]).satisfies_riemann_hurwitz());
    assert!(!BranchSignature::new(12, vec![2, 2, 2, 2]).satisfies_riemann_hurwitz());
    assert!(BranchSignature::new(24, vec![4, 2, 3]).satisfies_riemann_hurwitz());
    assert_eq!(BranchSignature::new(24, vec![4, 2, 3]).family(), Some(SignatureFamily::Octahedral));
}

fn warp() -> MapExpr {
    parse_map("(stereo (comp (aniso 1.25 0.15) (mobD 0.1 0.05)))").unwrap()
}

fn z_family() -> CircleFamily {
    CircleFamily::new(MapExpr::identity(Space::Sphere), RotationModel::Sphere { axis: [0.0, 0.0, 1.0] })
}

#[test]
fn warped_cyclic_group() {
    let spec = CompactSpec {
        families: vec![],
        generators: vec![MapExpr::conj(warp(), parse_map("(rotS (0 0 1) 2.5132741228718345)").unwrap())],
    };
    let c = classify_compact_group(&spec).unwrap();
    assert_eq!(c.label, GroupClassLabel::Cyclic(5));
    assert_eq!(c.signature.unwrap().to_string(), "(5; 5, 5)");
}

#[test]
fn circle_extensions() {
    // half-turn about the x-axis swaps the poles of the z-family
    let flip = CompactSpec { families: vec![z_family()], generators: vec![parse_map("(rotS (1 0 0) 3.141592653589793)").unwrap()] };
    let c = classify_compact_group(&flip.conjugated(&warp())).unwrap();
    assert_eq!(c.label, GroupClassLabel::InfiniteDihedral);
    assert!(c.max_defect() <= 1e-3);

    // reflection in a plane through the axis fixes both poles
    let mirror = CompactSpec { families: vec![z_family()], generators: vec![parse_map("(reflS (0 1 0))").unwrap()] };
    let c = classify_compact_group(&mirror.conjugated(&warp())).unwrap();
    assert_eq!(c.label, GroupClassLabel::Z2SemidirectU1);
    assert!(c.max_defect() <= 1e-3);
}

#[test]
fn labels_survive_a_common_conjugation() {
    let specs = [
        CompactSpec { families: vec![z_family()], generators: vec![] },
        CompactSpec { families: vec![z_family()], generators: vec![MapExpr::antipodal()] },
        CompactSpec {
            families: vec![],
            generators: vec![
                parse_map("(rotS (0 0 1) 1.5707963267948966)").unwrap(),
                parse_map("(rotS (1 0 0) 3.141592653589793)").unwrap(),
            ],
        },
    ];
    let extra = parse_map("(stereo (comp (shear 0.2) (radial 0.8)))").unwrap();
    for spec in specs {
        let plain = classify_compact_group(&spec).unwrap().label;
        let warped = classify_compact_group(&spec.conjugated(&warp())).unwrap().label;
        let twice = classify_compact_group(&spec.conjugated(&warp()).conjugated(&extra)).unwrap().label;
        assert_eq!(plain, warped);
        assert_eq!(plain, twice);
    }
}
