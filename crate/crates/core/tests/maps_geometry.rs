use std::f64::consts::{PI, TAU};

use kerek::geometry::{map_degree, modulus_of_continuity, sup_distance, vec};
use kerek::maps::{check_cocycle_relation, cocycle_value, lift_circle_map, parse_map};
use kerek::{Error, MapExpr, Metric, MetricKind, SampleGrid, Space, SurfacePoint};
use proptest::prelude::*;

fn chordal(space: Space) -> Metric {
    Metric::new(space, MetricKind::Chordal)
}

#[test]
fn sup_distance_closed_forms() {
    let id = MapExpr::identity(Space::Sphere);
    let g = SampleGrid::sphere(500);
    assert_eq!(sup_distance(&id, &id, &g, &chordal(Space::Sphere)).unwrap(), 0.0);

    let half = MapExpr::circle_rotation(0.5);
    let d = sup_distance(&half, &MapExpr::identity(Space::Circle), &SampleGrid::circle(64), &chordal(Space::Circle));
    assert!((d.unwrap() - 2.0).abs() < 1e-12);

    // the rotation moves equator points furthest; an odd Fibonacci grid
    // contains an equator point
    let theta = TAU / 5.0;
    let rot = MapExpr::sphere_rotation([0.0, 0.0, 1.0], theta).unwrap();
    let d = sup_distance(&rot, &id, &SampleGrid::sphere(20001), &chordal(Space::Sphere)).unwrap();
    assert!((d - 2.0 * (theta / 2.0).sin()).abs() < 1e-6);
}

#[test]
fn degrees_of_standard_maps() {
    let cases = [
        ("(id sphere)", 1),
        ("(antipodal)", -1),
        ("(reflS (0.3 -1 2))", -1),
        ("(rotS (0 1 1) 2.0)", 1),
        ("(conj (stereo (radial 1.8)) (rotS (0 0 1) 1.0))", 1),
        ("(conj (stereo (aniso 1.3 0.2)) (antipodal))", -1),
    ];
    for (text, want) in cases {
        assert_eq!(map_degree(&parse_map(text).unwrap(), 64).unwrap(), want, "{text}");
    }
}

/// Largest α with `|x − y| < α ⇒ |g x − g y| < ε` over the grid, by scanning
/// every pair directly.
fn pair_scan(family: &[MapExpr], eps: f64, n: usize) -> f64 {
    let xs: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
    let images: Vec<Vec<f64>> = family.iter().map(|g| xs.iter().map(|&x| g.eval_circle(x)).collect()).collect();
    let chord = |a: f64, b: f64| 2.0 * (PI * (a - b)).sin().abs();
    // smallest source distance of a violating pair
    let mut worst = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let d = chord(xs[i], xs[j]);
            if d >= worst {
                continue;
            }
            if images.iter().any(|im| chord(im[i], im[j]) >= eps) {
                worst = d;
            }
        }
    }
    worst
}

#[test]
fn modulus_examples() {
    let m = chordal(Space::Circle);
    let grid = SampleGrid::circle(512);
    let id = [MapExpr::identity(Space::Circle)];
    assert!(modulus_of_continuity(&id, 0.1, &grid, &m).unwrap() >= 0.1 - 1e-9);
    let rots: Vec<MapExpr> = (0..8).map(|k| MapExpr::circle_rotation(k as f64 / 8.0)).collect();
    let phi = modulus_of_continuity(&rots, 0.1, &grid, &m).unwrap();
    assert!((phi - 0.1).abs() < 2.0 * TAU / 512.0);

    let f = parse_map("(conj (warpC 0.5) (rotC 0.1))").unwrap();
    let iterates: Vec<MapExpr> = (1..=32).map(|k| f.power(k)).collect();
    let n = 4096;
    let phi = modulus_of_continuity(&iterates, 0.1, &SampleGrid::circle(n), &m).unwrap();
    let scan = pair_scan(&iterates[..], 0.1, n);
    // the bisection threshold and the first violating distance bracket the
    // same grid gap
    assert!((phi - scan).abs() <= TAU / n as f64, "{phi} vs {scan}");
}

#[test]
fn evaluate_examples() {
    let x = SurfacePoint::sphere(0.0, 0.6, 0.8);
    assert_eq!(MapExpr::identity(Space::Sphere).evaluate(&x).unwrap(), x);
    assert_eq!(MapExpr::circle_rotation(0.25).eval_circle(0.5), 0.75);
    let q = MapExpr::radial_warp(2.0).unwrap().eval_disk([0.6, 0.0]);
    assert!((q[0] - 0.36).abs() < 1e-15 && q[1].abs() < 1e-15);
    assert!(matches!(
        MapExpr::circle_rotation(0.1).evaluate(&x),
        Err(Error::SpaceMismatch { .. })
    ));
    assert!(MapExpr::circle_warp(vec![0.6, 0.5]).is_err());
}

#[test]
fn lift_and_cocycle_closed_forms() {
    let rot = lift_circle_map(&MapExpr::circle_rotation(0.3), 1024).unwrap();
    for k in 0..50 {
        let x = k as f64 / 37.0;
        assert!((rot.eval(x) - (x + 0.3)).abs() < 1e-12);
        assert!((cocycle_value(&rot, x) - 0.3).abs() < 1e-12);
    }
    let warp = lift_circle_map(&MapExpr::circle_warp(vec![0.5]).unwrap(), 1024).unwrap();
    for k in 0..=1024 {
        let x = k as f64 / 1024.0;
        assert!((warp.eval(x) - (x + 0.5 * (TAU * x).sin() / TAU)).abs() < 1e-12);
        assert!((warp.eval(x + 1.0) - warp.eval(x) - 1.0).abs() < 1e-12);
    }
    assert!((cocycle_value(&warp, 0.25) - 1.0 / (4.0 * PI)).abs() < 1e-12);
    let id = lift_circle_map(&MapExpr::identity(Space::Circle), 1024).unwrap();
    assert_eq!(cocycle_value(&id, 0.7), 0.0);

    let flip = MapExpr::sphere_reflection([0.0, 0.0, 1.0]).unwrap();
    assert!(lift_circle_map(&flip, 1024).is_err());

    let grid = SampleGrid::circle(4096);
    let r2 = lift_circle_map(&MapExpr::circle_rotation(0.45), 1024).unwrap();
    assert!(check_cocycle_relation(&rot, &r2, &grid).unwrap() < 1e-12);
    assert!(check_cocycle_relation(&rot, &warp, &grid).unwrap() <= 1e-9);
    let w = MapExpr::circle_warp(vec![0.4, 0.2]).unwrap();
    let (lw, lwi) = (lift_circle_map(&w, 1024).unwrap(), lift_circle_map(&w.inverse(), 1024).unwrap());
    assert!(check_cocycle_relation(&lw, &lwi, &grid).unwrap() <= 1e-9);
}

fn arb_sphere_map() -> impl Strategy<Value = MapExpr> {
    let axis = (-1.0..1.0f64, -1.0..1.0f64, 0.1..1.0f64);
    let leaf = prop_oneof![
        (axis.clone(), -3.0..3.0f64).prop_map(|((x, y, z), a)| MapExpr::sphere_rotation([x, y, z], a).unwrap()),
        axis.prop_map(|(x, y, z)| MapExpr::sphere_reflection([x, y, z]).unwrap()),
        (0.5..2.0f64).prop_map(|b| MapExpr::stereo(MapExpr::radial_warp(b).unwrap()).unwrap()),
        (-0.4..0.4f64).prop_map(|c| MapExpr::stereo(MapExpr::angular_shear(c).unwrap()).unwrap()),
        (-0.5..0.5f64, -0.5..0.5f64).prop_map(|(a, b)| MapExpr::stereo(MapExpr::disk_mobius([a, b]).unwrap()).unwrap()),
        Just(MapExpr::antipodal()),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, g)| MapExpr::compose(f, g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| MapExpr::conj(f, g)),
            inner.prop_map(|f| f.inverse()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn print_parse_round_trip(f in arb_sphere_map()) {
        let printed = f.to_string();
        let back = parse_map(&printed).unwrap();
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn inverse_round_trip_and_unit_norm(f in arb_sphere_map()) {
        let g = MapExpr::compose(f.clone(), f.inverse());
        for p in SampleGrid::sphere(101).points {
            let x = p.as_sphere().unwrap();
            let y = f.eval_sphere(x);
            prop_assert!((vec::norm(y) - 1.0).abs() < 1e-12);
            prop_assert!(vec::dist3(g.eval_sphere(x), x) < 1e-9);
        }
    }

    #[test]
    fn orientation_matches_degree(f in arb_sphere_map()) {
        prop_assert_eq!(map_degree(&f, 32).unwrap(), f.orientation() as i64);
    }

    #[test]
    fn disk_maps_stay_in_the_disk(b in 0.3..3.0f64, c in -0.5..0.5f64, a in -0.6..0.6f64, t in 0.0..1.0f64) {
        let f = MapExpr::compose(
            MapExpr::compose(MapExpr::radial_warp(b).unwrap(), MapExpr::angular_shear(c).unwrap()),
            MapExpr::compose(MapExpr::disk_mobius([a, a / 2.0]).unwrap(), MapExpr::disk_rotation(t)),
        );
        for p in SampleGrid::disk(6).points.iter().chain(SampleGrid::disk_boundary(32).points.iter()) {
            let q = f.eval_disk(p.as_disk().unwrap());
            prop_assert!(q[0].hypot(q[1]) <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn metric_axioms(i in 0usize..200, j in 0usize..200, k in 0usize..200) {
        let g = SampleGrid::sphere(200);
        for kind in [MetricKind::Chordal, MetricKind::Geodesic, MetricKind::NormalizedGeodesic] {
            let m = Metric::new(Space::Sphere, kind);
            let (a, b, c) = (&g.points[i], &g.points[j], &g.points[k]);
            prop_assert_eq!(m.distance(a, a), 0.0);
            prop_assert!((m.distance(a, b) - m.distance(b, a)).abs() <= 1e-12);
            prop_assert!(m.distance(a, c) <= m.distance(a, b) + m.distance(b, c) + 1e-12);
        }
    }
}
