use std::path::Path;
use std::process::Command;

use contourgraph::shapes::io::{format_contour_csv, format_pgm};
use contourgraph::shapes::synthetic::{ClassTemplate, SyntheticSpec};
use contourgraph::{
    extract_phi, generate_shape, trace_boundary, ClassifierSpec, MetricOptions, Mode, Perturbation, Raster,
    ShapeSpec, SweepPlan,
};
use contourgraph_cli::experiment::ReportFile;
use contourgraph_cli::features::read_features;
use contourgraph_cli::output::strip_comments;
use contourgraph_cli::{load_dataset, run_experiment, DatasetSource, ExperimentConfig, Thresholds};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_contourgraph"));
    c.env_remove("CONTOURGRAPH_SEED");
    c
}

fn ok(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn two_class_spec(per_class: usize) -> SyntheticSpec {
    SyntheticSpec {
        classes: vec![
            ClassTemplate { name: "circle".into(), shape: ShapeSpec::circle(80, 1.0) },
            ClassTemplate { name: "star".into(), shape: ShapeSpec::star(5, 0.4, 80, 1.0) },
        ],
        samples_per_class: per_class,
        noise_level: 1,
        radius_min: 20.0,
        radius_max: 30.0,
        seed: 4,
    }
}

fn small_config(spec: SyntheticSpec) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(DatasetSource::Synthetic(spec));
    cfg.folds = 3;
    cfg.repeats = 5;
    cfg.seed = 12;
    cfg.thresholds = Thresholds::Count(6);
    cfg
}

#[test]
fn two_class_directory() {
    let dir = tempfile::tempdir().unwrap();
    for (class, k) in [("tri", 3), ("sq", 4)] {
        std::fs::create_dir_all(dir.path().join(class)).unwrap();
        for i in 0..3 {
            let c = generate_shape(&ShapeSpec::polygon(k, 60, 10.0 + i as f64)).unwrap();
            std::fs::write(dir.path().join(class).join(format!("{i}.csv")), format_contour_csv(&c)).unwrap();
        }
    }
    let cs = load_dataset(dir.path(), false).unwrap();
    assert_eq!(cs.len(), 6);
    let labels: Vec<&str> = cs.iter().map(|c| c.label().unwrap()).collect();
    assert_eq!(labels, ["sq", "sq", "sq", "tri", "tri", "tri"]);
}

#[test]
fn empty_directory_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = load_dataset(dir.path(), false).unwrap_err();
    assert!(err.to_string().contains("no contour files"));
    let out = bin().args(["extract", "--input"]).arg(dir.path()).args(["--out"]).arg(dir.path().join("f.csv")).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn csv_and_pgm_are_interchangeable() {
    let img = Raster::from_fn(30, 30, |x, y| (5..25).contains(&x) && (8..22).contains(&y) && x + y > 16);
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("shape")).unwrap();
    std::fs::write(dir.path().join("shape/a.pgm"), format_pgm(&img)).unwrap();
    let traced = trace_boundary(&img).unwrap();
    std::fs::write(dir.path().join("shape/b.csv"), format_contour_csv(&traced)).unwrap();
    let cs = load_dataset(dir.path(), false).unwrap();
    assert_eq!(cs.len(), 2);
    assert_eq!(cs[0].points(), cs[1].points());
    let plan = SweepPlan::uniform(13, Mode::SmallerThan).unwrap();
    let o = MetricOptions::default();
    assert_eq!(extract_phi(&cs[0], &plan, &o).unwrap().values, extract_phi(&cs[1], &plan, &o).unwrap().values);
}

#[test]
fn separable_synthetic_run_is_perfect_and_reproducible() {
    let cfg = small_config(two_class_spec(6));
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let outcome = run_experiment(&cfg, a.path()).unwrap();
    assert_eq!(outcome.reports.len(), 1);
    assert_eq!(outcome.reports[0].1.mean_accuracy, 100.0);
    run_experiment(&cfg, b.path()).unwrap();
    for f in ["features_original.csv", "features_original.json", "report_original.json", "report.txt", "config.json"] {
        assert_eq!(read(&a.path().join(f)), read(&b.path().join(f)), "{f}");
    }
    let features = read(&a.path().join("features_original.csv"));
    assert!(features.starts_with(&format!("# config={} seed=12\n", cfg.hash())));

    // the embedded config reproduces the run byte for byte
    let c = tempfile::tempdir().unwrap();
    ok(bin().arg("run").arg("--config").arg(a.path().join("config.json")).arg("--out").arg(c.path()));
    for f in ["features_original.csv", "report_original.json", "report.txt"] {
        assert_eq!(read(&a.path().join(f)), read(&c.path().join(f)), "{f}");
    }
}

#[test]
fn rotation_grid_gives_one_report_per_angle() {
    let mut cfg = small_config(two_class_spec(4));
    cfg.perturbations = [7.0, 35.0, 104.0, 298.0].map(|a| Perturbation::Rotate { angle_deg: a }).to_vec();
    cfg.profile_threshold = Some(0.325);
    let dir = tempfile::tempdir().unwrap();
    let outcome = run_experiment(&cfg, dir.path()).unwrap();
    assert_eq!(outcome.reports.len(), 4);
    for name in ["rotate_7", "rotate_35", "rotate_104", "rotate_298"] {
        let r: ReportFile = serde_json::from_str(&read(&dir.path().join(format!("report_{name}.json")))).unwrap();
        assert_eq!(r.condition.name, name);
        assert_eq!(r.config_hash, cfg.hash());
        let profile = read(&dir.path().join("profiles").join(name).join("circle_000.csv"));
        assert!(profile.lines().nth(1).unwrap() == "node,k,cc,b,k2,k3");
    }
    // rotation leaves the features untouched
    let f0 = read_features(&dir.path().join("features_rotate_7.csv")).unwrap();
    let f1 = read_features(&dir.path().join("features_rotate_104.csv")).unwrap();
    for (x, y) in f0.iter().zip(&f1) {
        for (a, b) in x.values.iter().zip(&y.values) {
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-300));
        }
    }
    assert_eq!(read(&dir.path().join("report.txt")).lines().count(), 6);
}

#[test]
fn piped_subcommands_match_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(bin().args(["generate", "dataset", "--per-class", "5", "--points", "60", "--seed", "3", "--out"]).arg(d.join("raw")));
    ok(bin()
        .args(["perturb", "--kind", "noise", "--value", "2", "--seed", "8", "--input"])
        .arg(d.join("raw"))
        .arg("--out")
        .arg(d.join("noisy")));
    ok(bin().args(["extract", "--n-thresholds", "7", "--input"]).arg(d.join("noisy")).arg("--out").arg(d.join("f.csv")));
    ok(bin()
        .args(["classify", "--classifier", "knn:1", "--folds", "5", "--repeats", "4", "--seed", "2", "--features"])
        .arg(d.join("f.csv"))
        .arg("--out")
        .arg(d.join("cls")));

    let mut cfg = ExperimentConfig::new(DatasetSource::Synthetic(SyntheticSpec::geometric_ten(5, 60, 3)));
    cfg.thresholds = Thresholds::Count(7);
    cfg.folds = 5;
    cfg.repeats = 4;
    cfg.seed = 2;
    cfg.classifier = ClassifierSpec::Knn { k: 1 };
    cfg.perturbations = vec![Perturbation::Noise { level: 2, seed: 8 }];
    let outcome = run_experiment(&cfg, &d.join("run")).unwrap();

    assert_eq!(
        strip_comments(&read(&d.join("f.csv"))),
        strip_comments(&read(&d.join("run/features_noise_2.csv")))
    );
    let piped: ReportFile = serde_json::from_str(&read(&d.join("cls/report.json"))).unwrap();
    assert_eq!(piped.report, outcome.reports[0].1);
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(bin().args(["generate", "dataset", "--per-class", "2", "--points", "48", "--seed", "77", "--out"]).arg(d.join("a")));
    ok(bin()
        .env("CONTOURGRAPH_SEED", "77")
        .args(["generate", "dataset", "--per-class", "2", "--points", "48", "--out"])
        .arg(d.join("b")));
    let a = load_dataset(&d.join("a"), false).unwrap();
    let b = load_dataset(&d.join("b"), false).unwrap();
    assert_eq!(a, b);
}

#[test]
fn single_shape_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(bin().args(["generate", "shape", "--kind", "polygon", "--sides", "4", "--samples", "200", "--label", "sq", "--out"]).arg(d.join("sq.csv")));
    ok(bin().args(["generate", "shape", "--kind", "circle", "--samples", "150", "--out"]).arg(d.join("c.csv")));
    ok(bin().args(["measure", "--threshold", "0.325", "--input"]).arg(d.join("sq.csv")).arg("--edges").arg(d.join("e.txt")).arg("--out").arg(d.join("p.csv")));
    let profile = read(&d.join("p.csv"));
    assert_eq!(profile.lines().count(), 2 + 200);
    assert!(read(&d.join("e.txt")).lines().all(|l| l.split(' ').count() == 2));
    ok(bin().args(["measure", "--n-thresholds", "5", "--input"]).arg(d.join("sq.csv")).arg("--out").arg(d.join("s.csv")));
    assert_eq!(read(&d.join("s.csv")).lines().count(), 2 + 5);
    ok(bin().args(["curvature", "--normalize", "--input"]).arg(d.join("sq.csv")).arg("--out").arg(d.join("k.csv")));
    let k = read(&d.join("k.csv"));
    assert_eq!(k.lines().nth(1), Some("index,curvature"));
    assert_eq!(k.lines().count(), 2 + 200);
    ok(bin().args(["interpolate", "--steps", "4", "--from"]).arg(d.join("c.csv")).arg("--to").arg(d.join("sq.csv")).arg("--out").arg(d.join("interp")));
    assert_eq!(std::fs::read_dir(d.join("interp")).unwrap().count(), 5);
    ok(bin().args(["perturb", "--kind", "scale", "--value", "2", "--input"]).arg(d.join("sq.csv")).arg("--out").arg(d.join("big.csv")));

    let img = Raster::from_fn(12, 12, |x, y| (2..9).contains(&x) && (3..10).contains(&y));
    std::fs::write(d.join("img.pgm"), format_pgm(&img)).unwrap();
    ok(bin().args(["trace", "--label", "blk", "--input"]).arg(d.join("img.pgm")).arg("--out").arg(d.join("t.csv")));
    assert!(read(&d.join("t.csv")).contains("# label=blk"));
}

#[test]
fn studies_write_tidy_tables() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(bin().args(["generate", "dataset", "--per-class", "3", "--points", "48", "--out"]).arg(d.join("ds")));
    ok(bin()
        .args(["sweep-study", "--sizes", "2,4", "--folds", "3", "--repeats", "2", "--input"])
        .arg(d.join("ds"))
        .arg("--out")
        .arg(d.join("sweep.csv")));
    let t = read(&d.join("sweep.csv"));
    assert_eq!(t.lines().nth(1), Some("descriptor,n_thresholds,threshold,classifier,mean_accuracy,std_dev"));
    assert_eq!(t.lines().count(), 2 + 4);
    ok(bin()
        .args(["single-threshold-study", "--thresholds", "0.25,0.5", "--classifier", "nb", "--folds", "3", "--repeats", "2", "--input"])
        .arg(d.join("ds"))
        .arg("--out")
        .arg(d.join("single.csv")));
    let t = read(&d.join("single.csv"));
    assert!(t.lines().nth(2).unwrap().starts_with("single,1,0.25,nb,"));
}

#[test]
fn bad_config_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.json"), "{\"descriptor\": \"phi\"}").unwrap();
    let out = bin().arg("run").arg("--config").arg(dir.path().join("c.json")).arg("--out").arg(dir.path().join("o")).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid experiment config"));
}
