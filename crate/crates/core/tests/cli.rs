use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

fn kerek(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kerek"))
        .args(args)
        .current_dir(dir)
        .env("KEREK_THREADS", "1")
        .output()
        .expect("run kerek")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn report(dir: &Path) -> BTreeMap<String, String> {
    std::fs::read_to_string(dir.join("report.txt"))
        .unwrap()
        .lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect()
}

#[test]
fn newman_check_on_half_turn() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "f.cfg", "map = (rotS (0 0 1) 3.141592653589793)\nperiod = 2\n");
    let out = kerek(&["newman-check", "--map", "f.cfg", "--out", "o"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&tmp.path().join("o"));
    assert_eq!(r["d_f_id"], "2");
    assert_eq!(r["bound_2_over_p"], "true");
    assert_eq!(r["bound_unit"], "true");
}

#[test]
fn empty_config_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "e.cfg", "# nothing here\n\n");
    let out = kerek(&["rotnum", "--map", "e.cfg"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(kerek(&[], tmp.path()).status.code(), Some(2));
    assert_eq!(kerek(&["rotnum"], tmp.path()).status.code(), Some(2));
}

#[test]
fn unknown_keys_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "f.cfg", "map = (rotC 0.25)\nspeed = 3\n");
    let out = kerek(&["rotnum", "--map", "f.cfg"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key 'speed'"));
}

#[test]
fn domain_errors_write_a_record() {
    let tmp = tempfile::tempdir().unwrap();
    // an aperiodic map declared to have period 3
    write(tmp.path(), "f.cfg", "map = (rotS (0 0 1) 1.0)\nperiod = 3\n");
    let out = kerek(&["newman-check", "--map", "f.cfg", "--out", "o"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let rec = std::fs::read_to_string(tmp.path().join("o/error.txt")).unwrap();
    assert!(rec.contains("status: error"));
    assert!(rec.contains("error: NotPeriodic"));
    assert!(rec.contains("period=3"));
}

#[test]
fn include_directive_reads_map_files() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::create_dir(tmp.path().join("maps")).unwrap();
    write(tmp.path(), "maps/g.map", "# a warped quarter turn\n(conj (warpC 0.3)\n      (rotC 0.25))\n");
    write(tmp.path(), "f.cfg", "include map = maps/g.map\nexpected = 0.25\n");
    let out = kerek(&["rotnum", "--map", "f.cfg", "--iterations", "20000", "--out", "o"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&tmp.path().join("o"));
    assert_eq!(r["iterations"], "20000");
    assert_eq!(r["within_tolerance"], "true");
}

#[test]
fn classify_finite_matches_the_golden_table() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kerek(&["classify-finite", "--n-max", "60", "--out", "o"], tmp.path());
    assert!(out.status.success());
    let got = std::fs::read_to_string(tmp.path().join("o/signatures.csv")).unwrap();
    assert_eq!(got, include_str!("data/signatures_60.csv"));
}

#[test]
fn every_subcommand_writes_its_files() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    write(d, "circle.cfg", "generator = (conj (warpC 0.3) (rotC 0.2))\n");
    write(d, "disk.cfg", "family = disk (comp (aniso 1.3 0.2) (mobD 0.1 0.0))\norbits = 16\n");
    write(d, "inv.cfg", "family = sphere 0 0 1 (stereo (radial 1.4))\nx0 = 0 0 -1\nepsilon = 0.2 0.4\n");
    write(d, "lin.cfg", "map = (conj (stereo (aniso 1.2 0.1)) (rotS (0 0 1) 1.0471975511965976))\nsamples = 200\n");
    write(d, "invo.cfg", "map = (conj (stereo (radial 1.5)) (reflS (0 1 0)))\n");
    write(d, "grp.cfg", "family = sphere 0 0 1 (id sphere)\ngenerator = (antipodal)\n");
    let cases: [(&[&str], &[&str]); 6] = [
        (&["linearize-circle", "--spec", "circle.cfg"], &["report.txt", "conjugacy.csv"]),
        (&["linearize-disk", "--spec", "disk.cfg", "--resolution", "16"], &["report.txt", "conjugacy.csv", "arc.svg"]),
        (
            &["invariant-disk", "--spec", "inv.cfg", "--resolution", "128"],
            &["report.txt", "curve_0.txt", "curve_1.txt", "disk_0.pgm", "disk_1.pgm", "curves.svg"],
        ),
        (&["linearize-sphere", "--map", "lin.cfg", "--resolution", "64"], &["report.txt", "conjugacy.csv"]),
        (&["classify-involution", "--map", "invo.cfg"], &["report.txt"]),
        (&["classify-group", "--spec", "grp.cfg"], &["report.txt"]),
    ];
    for (k, (args, expected)) in cases.iter().enumerate() {
        let outdir = format!("o{k}");
        let mut a = args.to_vec();
        a.extend(["--out", &outdir]);
        let out = kerek(&a, d);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let names: Vec<String> = files(&d.join(&outdir)).into_keys().collect();
        let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(names, want, "{args:?}");
    }
    assert_eq!(report(&d.join("o4"))["type"], "reflection");
    assert_eq!(report(&d.join("o5"))["label"], "Z2xU1");
    assert_eq!(report(&d.join("o2"))["nested"], "true");
    let pgm = std::fs::read(d.join("o2/disk_0.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n"));
    let svg = std::fs::read_to_string(d.join("o1/arc.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    write(d, "fam.cfg", "family = circle (warpC 0.6)\nt = 0.3\npairs = 4\npair_iterations = 2000\n");
    write(d, "inv.cfg", "generator = (conj (stereo (radial 1.3)) (rotS (0 0 1) 1.2566370614359172))\nx0 = 0 0 1\nepsilon = 0.3\n");
    let runs: [&[&str]; 3] = [
        &["rotnum", "--map", "fam.cfg", "--iterations", "5000", "--seed", "7"],
        &["invariant-disk", "--spec", "inv.cfg", "--resolution", "96"],
        &["classify-finite", "--n-max", "30"],
    ];
    for args in runs {
        let mut outs = Vec::new();
        for rep in 0..2 {
            let dir = format!("{}_{rep}", args[0]);
            let mut a = args.to_vec();
            a.extend(["--out", &dir]);
            assert!(kerek(&a, d).status.success(), "{args:?}");
            outs.push(files(&d.join(&dir)));
        }
        assert_eq!(outs[0], outs[1], "{args:?}");
    }
}

#[test]
fn degree_of_a_warped_antipodal_map() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "f.cfg", "map = (conj (stereo (radial 1.5)) (antipodal))\nresolution = 32\n");
    let out = kerek(&["degree", "--map", "f.cfg", "--out", "o"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&tmp.path().join("o"));
    assert_eq!(r["degree"], "-1");
    assert_eq!(r["consistent"], "true");
}

#[test]
fn invariant_metric_for_a_warped_dihedral_group() {
    let tmp = tempfile::tempdir().unwrap();
    write(
        tmp.path(),
        "g.cfg",
        "generator = (conj (stereo (radial 1.3)) (rotS (0 0 1) 2.0943951023931957))\n\
         generator = (conj (stereo (radial 1.3)) (rotS (1 0 0) 3.141592653589793))\npairs = 200\n",
    );
    let out = kerek(&["invariant-metric", "--spec", "g.cfg", "--out", "o"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&tmp.path().join("o"));
    assert_eq!(r["within_tolerance"], "true");
    assert!(r["isometry_defect"].parse::<f64>().unwrap() <= 1e-9);
}
