use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::Config;
use super::output::{csv, fmt_num, Outputs, Report, Svg};
use super::{Command, Common};
use crate::circle::{invariant_measure, linearize_circle_group, rotation_number, rotation_number_birkhoff, rotation_number_integral};
use crate::classify::{classify_compact_group, enumerate_riemann_hurwitz, signatures_csv, signatures_table, CompactSpec};
use crate::disk::{linearize_disk_action, orbit_curve, DiskAction};
use crate::error::{Error, Result};
use crate::geometry::{averaged_metric, circular_distance, map_degree, vec, MetricKind, SampleGrid, Space, SurfacePoint};
use crate::group::GroupSpec;
use crate::maps::{lift_circle_map, MapExpr};
use crate::sphere::{classify_involution, invariant_disk, linearize_sphere_map, newman_check, InvariantDisk};
use crate::tolerances;

const SETTINGS: [&str; 3] = ["resolution", "tolerance", "iterations"];

fn keys<'a>(extra: &[&'a str]) -> Vec<&'a str> {
    SETTINGS.iter().copied().chain(extra.iter().copied()).collect()
}

/// Flag value, else config value, else default.
fn setting<T: std::str::FromStr + Copy>(flag: Option<T>, cfg: &Config, key: &str, default: T) -> Result<T> {
    Ok(match flag {
        Some(v) => v,
        None => cfg.number(key)?.unwrap_or(default),
    })
}

fn verdict(r: &mut Report, value: f64, tolerance: f64) {
    r.num("tolerance", tolerance);
    r.line("within_tolerance", value <= tolerance);
}

pub fn dispatch(cmd: &Command, common: &Common, cfg: &Config) -> Result<Outputs> {
    match cmd {
        Command::Rotnum { .. } => rotnum(common, cfg),
        Command::LinearizeCircle { .. } => linearize_circle(common, cfg),
        Command::LinearizeDisk { .. } => linearize_disk(common, cfg),
        Command::InvariantDisk { .. } => invariant_disks(common, cfg),
        Command::LinearizeSphere { .. } => linearize_sphere(common, cfg),
        Command::NewmanCheck { .. } => newman(common, cfg),
        Command::ClassifyInvolution { .. } => involution(common, cfg),
        Command::Degree { .. } => degree(common, cfg),
        Command::InvariantMetric { .. } => invariant_metric(common, cfg),
        Command::ClassifyFinite { n_max } => classify_finite(*n_max),
        Command::ClassifyGroup { .. } => classify_group(common, cfg),
    }
}

fn finish(report: Report) -> Outputs {
    let mut out = Outputs::default();
    out.add("report.txt", report.into_string());
    out
}

fn rotnum(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["map", "family", "t", "expected", "pairs", "pair_iterations"]), &[])?;
    let iterations = setting(common.iterations, cfg, "iterations", 100_000)?;
    let tolerance = setting(common.tolerance, cfg, "tolerance", tolerances::DYNAMICAL)?;
    let mut r = Report::new("rotnum");
    r.line("iterations", iterations);
    let rho = match (cfg.get("map"), cfg.get("family")) {
        (Some(_), None) => {
            let est = rotation_number(&cfg.map("map")?, iterations)?;
            r.num("rho", est.value).num("birkhoff_error", est.error);
            est.value
        }
        (None, Some(_)) => {
            let resolution = setting(common.resolution, cfg, "resolution", 4096)?;
            let group = cfg.group()?;
            let GroupSpec::Family(fam) = &group else { unreachable!() };
            if fam.space() != Space::Circle {
                return Err(Error::SpaceMismatch { expected: Space::Circle, found: fam.space() });
            }
            let t: f64 = cfg.number("t")?.ok_or_else(|| Error::Config("missing key 't'".into()))?;
            let lift = lift_circle_map(&fam.member(t), 4096)?;
            let est = rotation_number_birkhoff(&lift, iterations)?;
            let measure = invariant_measure(&group, resolution)?;
            let integral = rotation_number_integral(&lift, &measure);
            // the integral is exact up to the quadrature on `resolution` cells
            let combined = est.error + 2.0 / resolution as f64;
            let gap = circular_distance(est.value, integral);
            r.num("t", t).num("rho", est.value).num("birkhoff_error", est.error);
            r.num("rho_integral", integral).line("measure_resolution", resolution);
            r.num("methods_gap", gap).num("combined_error", combined);
            r.line("methods_agree", gap <= combined);
            let pairs: usize = cfg.number("pairs")?.unwrap_or(32);
            if pairs > 0 {
                let pit: usize = cfg.number("pair_iterations")?.unwrap_or(10_000);
                let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
                let mut worst: f64 = 0.0;
                for _ in 0..pairs {
                    let (a, b): (f64, f64) = (rng.gen(), rng.gen());
                    let (fa, fb) = (fam.member(a), fam.member(b));
                    let ra = rotation_number(&fa, pit)?.value;
                    let rb = rotation_number(&fb, pit)?.value;
                    let rab = rotation_number(&MapExpr::compose(fa, fb), pit)?.value;
                    worst = worst.max(circular_distance(rab, ra + rb));
                }
                r.line("seed", common.seed).line("pairs", pairs);
                r.num("morphism_defect", worst);
            }
            est.value
        }
        _ => return Err(Error::Config("give exactly one of 'map' and 'family'".into())),
    };
    if let Some(expected) = cfg.number::<f64>("expected")? {
        let err = circular_distance(rho, expected);
        r.num("expected", expected).num("recovery_error", err);
        verdict(&mut r, err, tolerance);
    }
    Ok(finish(r))
}

fn linearize_circle(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["order_bound"]), &["family", "generator"])?;
    let resolution = setting(common.resolution, cfg, "resolution", 4096)?;
    let tolerance = setting(common.tolerance, cfg, "tolerance", tolerances::LINEARIZATION)?;
    let group = cfg.group()?;
    let lin = linearize_circle_group(&group, resolution)?;
    let mut r = Report::new("linearize-circle");
    r.line("resolution", resolution);
    let elements = group.sample_members(16)?;
    r.line("elements", elements.len());
    let mut worst: f64 = 0.0;
    for (k, g) in elements.iter().enumerate() {
        let (rho, d) = lin.conjugacy_defect(g, resolution)?;
        r.line(&format!("element_{k}"), format!("rho={} defect={}", fmt_num(rho), fmt_num(d)));
        worst = worst.max(d);
    }
    r.num("defect", worst);
    verdict(&mut r, worst, tolerance);
    let rows: Vec<[f64; 2]> = (0..=resolution.min(1024))
        .map(|k| {
            let x = k as f64 / resolution.min(1024) as f64;
            [x, lin.measure.cdf(x)]
        })
        .collect();
    let mut out = finish(r);
    out.add("conjugacy.csv", csv(&["x", "h"], &rows));
    Ok(out)
}

fn linearize_disk(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["order_bound", "orbits"]), &["family", "generator"])?;
    let resolution = setting(common.resolution, cfg, "resolution", 64)?;
    let tolerance = setting(common.tolerance, cfg, "tolerance", tolerances::LINEARIZATION)?;
    let orbits: usize = cfg.number("orbits")?.unwrap_or(64);
    let action = DiskAction::new(&cfg.group()?)?;
    let lin = linearize_disk_action(&action)?;
    let rep = lin.report(resolution, resolution)?;
    let mut r = Report::new("linearize-disk");
    r.line("radial", rep.radial).line("angular", rep.angular);
    r.line("arc_points", lin.arc.points.len()).num("arc_max_gap", lin.arc.max_gap());
    for (t, d) in &rep.per_element {
        r.line(&format!("element_t_{}", fmt_num(*t)), fmt_num(*d));
    }
    r.num("round_trip", rep.round_trip);
    let crossings = lin.arc.crossing_counts(&action, orbits, 512)?;
    r.line("orbits_checked", orbits);
    r.line("crossings_all_one", crossings.iter().all(|&c| c == 1));
    r.num("defect", rep.defect);
    verdict(&mut r, rep.defect, tolerance);

    let mut svg = Svg::new(1.05);
    let circle: Vec<[f64; 2]> = (0..256).map(|k| polar(1.0, k as f64 / 256.0)).collect();
    svg.polyline(&circle, true, "black", 1.0);
    for k in 1..8 {
        let base = lin.arc.at(k as f64 / 8.0);
        let curve = orbit_curve(&action, base, 512)?;
        svg.polyline(&curve.points, true, "steelblue", 1.0);
    }
    svg.polyline(&lin.arc.points, false, "crimson", 1.5);
    svg.dot(action.center(), 3.0, "black");

    let table = lin.table(resolution.min(64), resolution.min(64));
    let mut out = finish(r);
    out.add("conjugacy.csv", csv(&["r", "theta", "u", "v"], &table));
    out.add("arc.svg", svg.finish());
    Ok(out)
}

fn polar(r: f64, turns: f64) -> [f64; 2] {
    let a = std::f64::consts::TAU * turns;
    [r * a.cos(), r * a.sin()]
}

fn invariant_disks(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["order_bound", "x0", "epsilon"]), &["family", "generator"])?;
    let resolution = setting(common.resolution, cfg, "resolution", 512)?;
    let tolerance = setting(common.tolerance, cfg, "tolerance", 2.0)?;
    let group = cfg.group()?;
    let x0 = cfg
        .point("x0")?
        .map(vec::normalize)
        .ok_or_else(|| Error::Config("missing key 'x0'".into()))?;
    let epsilons: Vec<f64> = cfg
        .get("epsilon")
        .unwrap_or("0.2")
        .split_whitespace()
        .map(|s| s.parse::<f64>().map_err(|_| Error::Config(format!("epsilon: cannot parse '{s}'"))))
        .collect::<Result<_>>()?;
    let elements = group.sample_members(16)?;
    let mut r = Report::new("invariant-disk");
    r.line("resolution", resolution);
    r.line("x0", format!("{} {} {}", fmt_num(x0[0]), fmt_num(x0[1]), fmt_num(x0[2])));
    let mut out = Outputs::default();
    let mut disks: Vec<InvariantDisk> = Vec::new();
    let mut worst_pixels: f64 = 0.0;
    for (k, &eps) in epsilons.iter().enumerate() {
        let disk = invariant_disk(&group, x0, eps, resolution)?;
        let defect = elements.iter().map(|g| disk.curve.invariance_defect(g)).fold(0.0, f64::max);
        let pixels = defect / disk.pixel;
        worst_pixels = worst_pixels.max(pixels);
        let p = format!("disk_{k}_");
        r.num(&format!("{p}epsilon"), eps).num(&format!("{p}eta"), disk.eta).num(&format!("{p}delta"), disk.delta);
        r.num(&format!("{p}pixel"), disk.pixel).line(&format!("{p}curve_points"), disk.curve.points.len());
        r.num(&format!("{p}radius"), disk.curve.radius());
        r.line(&format!("{p}inside_ball"), disk.curve.radius() <= eps);
        r.line(&format!("{p}simple"), disk.curve.is_simple());
        r.line(&format!("{p}encloses_x0"), disk.curve.encloses(x0));
        r.num(&format!("{p}invariance_pixels"), pixels);
        out.add(&format!("curve_{k}.txt"), disk.curve.to_text());
        out.add(&format!("disk_{k}.pgm"), disk.filled_mask.to_pgm());
        disks.push(disk);
    }
    let nested = disks.windows(2).all(|w| {
        let (small, large) = (&w[0].filled_mask, &w[1].filled_mask);
        epsilons_sorted(&epsilons) && small.bits.iter().zip(&large.bits).all(|(&a, &b)| !a || b)
    });
    r.line("nested", nested);
    r.num("invariance_pixels", worst_pixels);
    verdict(&mut r, worst_pixels, tolerance);

    let charts: Vec<Vec<[f64; 2]>> = disks.iter().map(|d| d.curve.chart()).collect();
    let extent = charts.iter().flatten().map(|p| p[0].abs().max(p[1].abs())).fold(1e-3, f64::max) * 1.1;
    let mut svg = Svg::new(extent);
    for c in &charts {
        svg.polyline(c, true, "crimson", 1.0);
    }
    svg.dot([0.0, 0.0], 2.5, "black");
    out.add("report.txt", r.into_string());
    out.add("curves.svg", svg.finish());
    Ok(out)
}

fn epsilons_sorted(e: &[f64]) -> bool {
    e.windows(2).all(|w| w[0] < w[1])
}

fn linearize_sphere(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["map", "samples"]), &[])?;
    let resolution = setting(common.resolution, cfg, "resolution", 256)?;
    let tolerance = setting(common.tolerance, cfg, "tolerance", tolerances::LINEARIZATION)?;
    let samples: usize = cfg.number("samples")?.unwrap_or(2000);
    let f = cfg.map("map")?;
    let lin = linearize_sphere_map(&f, resolution)?;
    let rep = lin.report(samples)?;
    let mut r = Report::new("linearize-sphere");
    r.line("resolution", resolution).line("rows", lin.rows()).line("cols", lin.cols());
    let (s, n) = lin.fixed;
    r.line("fixed_south", format!("{} {} {}", fmt_num(s[0]), fmt_num(s[1]), fmt_num(s[2])));
    r.line("fixed_north", format!("{} {} {}", fmt_num(n[0]), fmt_num(n[1]), fmt_num(n[2])));
    r.num("rho", rep.rho);
    r.line("period", rep.period.map_or("none".to_string(), |p| p.to_string()));
    r.line("closure_samples", rep.samples).line("test_points", samples);
    r.num("round_trip", rep.round_trip);
    r.num("defect", rep.defect);
    verdict(&mut r, rep.defect, tolerance);
    let rows = resolution.min(32);
    let mut out = finish(r);
    out.add("conjugacy.csv", csv(&["z", "azimuth", "x", "y", "zz"], &lin.table(rows, 2 * rows)));
    Ok(out)
}

fn newman(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["map", "period"]), &[])?;
    let resolution = setting(common.resolution, cfg, "resolution", 20_000)?;
    let f = cfg.map("map")?;
    let p: u32 = cfg.number("period")?.ok_or_else(|| Error::Config("missing key 'period'".into()))?;
    let rep = newman_check(&f, p, &SampleGrid::sphere(resolution))?;
    let mut r = Report::new("newman-check");
    r.line("period", rep.period).line("grid", resolution);
    r.num("d_f_id", rep.d1).num("d_f_id_chordal", rep.d1_chordal);
    r.num("two_over_p", 2.0 / p as f64);
    r.num("max_r_d", rep.max_r).num("max_r_d_chordal", rep.max_r_chordal).line("worst_r", rep.worst_r);
    r.line("bound_2_over_p", rep.bound_2_over_p_ok);
    r.line("bound_unit", rep.bound_unit_ok);
    Ok(finish(r))
}

fn involution(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["map"]), &[])?;
    let resolution = setting(common.resolution, cfg, "resolution", 2001)?;
    let rep = classify_involution(&cfg.map("map")?, &SampleGrid::sphere(resolution))?;
    let mut r = Report::new("classify-involution");
    r.line("grid", resolution);
    r.line("type", rep.kind);
    r.num("min_displacement", rep.min_displacement);
    let w = rep.witness;
    r.line("witness", format!("{} {} {}", fmt_num(w[0]), fmt_num(w[1]), fmt_num(w[2])));
    Ok(finish(r))
}

fn degree(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["map"]), &[])?;
    let resolution = setting(common.resolution, cfg, "resolution", 64)?;
    let f = cfg.map("map")?;
    let d = map_degree(&f, resolution)?;
    let mut r = Report::new("degree");
    r.line("mesh_resolution", resolution).line("degree", d);
    r.line("orientation", f.orientation());
    r.line("consistent", d == f.orientation() as i64);
    Ok(finish(r))
}

fn random_point(space: Space, rng: &mut ChaCha8Rng) -> SurfacePoint {
    let (u, v): (f64, f64) = (rng.gen(), rng.gen());
    match space {
        Space::Circle => SurfacePoint::circle(u),
        Space::Disk | Space::Plane => {
            let (r, a) = (u.sqrt(), std::f64::consts::TAU * v);
            SurfacePoint::disk(r * a.cos(), r * a.sin())
        }
        Space::Sphere => {
            let z = 2.0 * u - 1.0;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let a = std::f64::consts::TAU * v;
            SurfacePoint::sphere(rho * a.cos(), rho * a.sin(), z)
        }
    }
}

fn invariant_metric(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&["order_bound", "pairs"]), &["generator"])?;
    let tolerance = setting(common.tolerance, cfg, "tolerance", tolerances::ROUND_TRIP)?;
    let pairs: usize = cfg.number("pairs")?.unwrap_or(1000);
    let group = cfg.group()?;
    let GroupSpec::Finite { generators, .. } = &group else {
        return Err(Error::Config("invariant-metric needs 'generator' keys".into()));
    };
    let space = group.space()?;
    let elements = group.elements()?;
    let order = elements.len();
    let metric = averaged_metric(elements, MetricKind::Chordal)?;
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let mut r = Report::new("invariant-metric");
    r.line("order", order).line("pairs", pairs).line("seed", common.seed);
    let mut worst: f64 = 0.0;
    for (k, g) in generators.iter().enumerate() {
        let mut defect: f64 = 0.0;
        for _ in 0..pairs {
            let (x, y) = (random_point(space, &mut rng), random_point(space, &mut rng));
            defect = defect.max((metric.distance(&g.eval(&x), &g.eval(&y)) - metric.distance(&x, &y)).abs());
        }
        r.num(&format!("generator{k}_isometry_defect"), defect);
        worst = worst.max(defect);
    }
    r.num("isometry_defect", worst);
    verdict(&mut r, worst, tolerance);
    Ok(finish(r))
}

fn classify_finite(n_max: u32) -> Result<Outputs> {
    let sigs = enumerate_riemann_hurwitz(n_max);
    let mut r = Report::new("classify-finite");
    r.line("n_max", n_max).line("signatures", sigs.len());
    let mut out = finish(r);
    out.add("signatures.csv", signatures_csv(&sigs));
    out.add("signatures.txt", signatures_table(&sigs));
    Ok(out)
}

fn classify_group(common: &Common, cfg: &Config) -> Result<Outputs> {
    cfg.check(&keys(&[]), &["family", "generator"])?;
    let tolerance = setting(common.tolerance, cfg, "tolerance", tolerances::RELATION)?;
    let (families, generators) = cfg.families_and_generators()?;
    let c = classify_compact_group(&CompactSpec { families, generators })?;
    let mut r = Report::new("classify-group");
    r.line("label", &c.label);
    if let Some(sig) = &c.signature {
        r.line("signature", sig);
    }
    for (k, v) in &c.evidence {
        r.line(k, v);
    }
    r.num("max_defect", c.max_defect());
    verdict(&mut r, c.max_defect(), tolerance);
    Ok(finish(r))
}
