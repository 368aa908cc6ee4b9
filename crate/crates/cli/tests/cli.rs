use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn plstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plstat"))
        .args(args)
        .env_remove("PLSTAT_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = plstat(args);
    assert!(
        out.status.success(),
        "plstat {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path.as_ref())
        .unwrap_or_else(|e| panic!("{}: {e}", path.as_ref().display()))
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

const SMALL: &[&str] = &["--n-points", "40", "--seed", "11", "--B", "200"];

#[test]
fn chained_commands_reproduce_the_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let mut args = vec!["pipeline", "--n-diagrams", "4", "--output-dir", p(&run)];
    args.extend_from_slice(SMALL);
    let stdout = ok(&args);
    assert!(stdout.contains("boot_pivotal"));

    let clouds = tmp.path().join("clouds");
    let mut args = vec!["sample", "--count", "4", "--out", p(&clouds)];
    args.extend_from_slice(SMALL);
    ok(&args);

    let mut diagrams: Vec<PathBuf> = Vec::new();
    for i in 0..4 {
        let d = tmp.path().join(format!("d{i}.csv"));
        ok(&[
            "persistence",
            "--in",
            p(&clouds.join(format!("cloud_{i:03}.csv"))),
            "--out",
            p(&d),
        ]);
        assert_eq!(
            read(&d),
            read(run.join(format!("diagrams/diagram_{i:03}.csv")))
        );
        diagrams.push(d);
    }

    let sample = tmp.path().join("sample.csv");
    let mut args = vec!["landscape", "--out", p(&sample), "--in"];
    args.extend(diagrams.iter().map(|d| p(d)));
    ok(&args);
    assert_eq!(read(&sample), read(run.join("sample.csv")));

    let reps = tmp.path().join("reps.csv");
    let intervals = ok(&[
        "ci",
        "--in",
        p(&sample),
        "--B",
        "200",
        "--seed",
        "11",
        "--replicates-out",
        p(&reps),
    ]);
    assert_eq!(json(&intervals), json(&read(run.join("intervals.json"))));
    assert_eq!(read(&reps), read(run.join("replicates.csv")));

    let dens = tmp.path().join("density");
    ok(&["density", "--in", p(&reps), "--out-dir", p(&dens)]);
    for name in [
        "risk.json",
        "cv_curve.csv",
        "density.csv",
        "kde_interval.json",
    ] {
        assert_eq!(read(dens.join(name)), read(run.join(name)), "{name}");
    }
}

#[test]
fn config_file_and_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("exp.toml");
    std::fs::write(&cfg, "object = \"torus\"\nn_points = 30\nn_diagrams = 3\nbootstrap_b = 100\noutput_dir = \"ignored\"\n")
        .unwrap();
    let out = tmp.path().join("out");
    ok(&[
        "pipeline",
        "--config",
        p(&cfg),
        "--n-diagrams",
        "5",
        "--output-dir",
        p(&out),
    ]);
    let written = read(out.join("config.toml"));
    assert!(written.contains("object = \"torus\""));
    assert!(written.contains("n_diagrams = 5"));
    assert_eq!(read(out.join("sample.csv")).lines().count(), 6);
}

#[test]
fn ci_is_deterministic_and_filters_methods() {
    let tmp = tempfile::tempdir().unwrap();
    let sample = tmp.path().join("y.csv");
    let values: String = (1..=30)
        .map(|i| format!("{}\n", 1.0 + (i as f64 * 0.37).sin().abs()))
        .collect();
    std::fs::write(&sample, format!("y\n{values}")).unwrap();

    let all = ok(&["ci", "--in", p(&sample), "--seed", "5"]);
    assert_eq!(all, ok(&["ci", "--in", p(&sample), "--seed", "5"]));
    assert_eq!(json(&all)["intervals"].as_array().unwrap().len(), 6);
    assert_ne!(all, ok(&["ci", "--in", p(&sample), "--seed", "6"]));

    let one = json(&ok(&[
        "ci",
        "--in",
        p(&sample),
        "--seed",
        "5",
        "--method",
        "boot-percentile",
    ]));
    let list = one["intervals"].as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["method"], "boot_percentile");
    assert!(list[0]["lower"].as_f64().unwrap() < list[0]["upper"].as_f64().unwrap());
}

#[test]
fn density_prints_risk_report() {
    let tmp = tempfile::tempdir().unwrap();
    let sample = tmp.path().join("y.csv");
    let values: String = (0..200)
        .map(|i| format!("{}\n", ((i * 7919) % 200) as f64 / 200.0))
        .collect();
    std::fs::write(&sample, values).unwrap();
    let report = json(&ok(&[
        "density",
        "--in",
        p(&sample),
        "--kernel",
        "gaussian",
        "--h-min",
        "0.02",
        "--h-max",
        "0.5",
        "--h-step",
        "0.02",
    ]));
    let h = report["h_cv"].as_f64().unwrap();
    assert!((0.02..=0.5).contains(&h));
    assert_eq!(report["kernel"], "gaussian");
}

#[test]
fn risk_arithmetic() {
    let terms = json(&ok(&[
        "risk",
        "--n",
        "100",
        "--h",
        "0.5",
        "--mode",
        "histogram",
        "--int-fprime-sq",
        "2",
    ]));
    assert!((terms["bias"].as_f64().unwrap() - 0.25 / 12.0 * 2.0).abs() < 1e-15);
    assert!((terms["variance"].as_f64().unwrap() - 0.02).abs() < 1e-15);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(plstat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(plstat(&["ci"]).status.code(), Some(2));
    assert_eq!(
        plstat(&["ci", "--in", "/definitely/not/here.csv"])
            .status
            .code(),
        Some(3)
    );

    let bad = tmp.path().join("bad.csv");
    std::fs::write(&bad, "y\n1\nabc\n").unwrap();
    let out = plstat(&["ci", "--in", p(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3"));

    let good = tmp.path().join("y.csv");
    std::fs::write(&good, "1\n2\n3\n4\n").unwrap();
    assert_eq!(
        plstat(&["ci", "--in", p(&good), "--alpha", "1.5"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        plstat(&["risk", "--n", "10", "--h=-1", "--mode", "histogram"])
            .status
            .code(),
        Some(4)
    );

    let out_dir = tmp.path().join("capped");
    let out = plstat(&[
        "pipeline",
        "--n-points",
        "40",
        "--n-diagrams",
        "2",
        "--simplex-cap",
        "100",
        "--output-dir",
        p(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out_dir.exists());
}

fn repo_config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

#[test]
fn shipped_configs_parse() {
    for name in ["sphere.toml", "torus.toml", "cancer.toml"] {
        let text = read(repo_config(name));
        plstat_core::pipeline::ExperimentConfig::from_toml_str(&text)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

/// 569 rows laid out like wdbc.data: id, diagnosis letter, 30 features.
/// The features trace a noisy circle so that loops exist at small scales.
fn synthetic_wdbc(path: &Path) {
    let mut text = String::new();
    for i in 0..569 {
        let a = i as f64 * 2.0 * std::f64::consts::PI / 569.0;
        let mut row = vec![
            format!("{}", 842302 + i),
            if i % 3 == 0 { "M" } else { "B" }.to_string(),
        ];
        for f in 0..30 {
            let x = match f {
                0 => 2.0 * a.cos(),
                1 => 2.0 * a.sin(),
                _ => 0.001 * (((i * 31 + f * 17) % 97) as f64 / 97.0),
            };
            row.push(format!("{x}"));
        }
        text.push_str(&row.join(","));
        text.push('\n');
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn cancer_config_runs_on_wdbc_layout() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::copy(repo_config("cancer.toml"), tmp.path().join("cancer.toml")).unwrap();
    synthetic_wdbc(&tmp.path().join("wdbc.data"));
    let out = tmp.path().join("bundle");
    ok(&[
        "pipeline",
        "--config",
        p(&tmp.path().join("cancer.toml")),
        "--n-diagrams",
        "3",
        "--max-scale",
        "0.5",
        "--B",
        "50",
        "--output-dir",
        p(&out),
    ]);
    let sample = read(out.join("sample.csv"));
    assert_eq!(sample.lines().count(), 4);
    let first = read(out.join("diagrams/diagram_000.csv"));
    assert!(first.lines().any(|l| l.starts_with("1,")), "no loop found");
    assert!(read(out.join("config.toml")).contains("n_points = 500"));
    assert!(out.join("manifest.json").exists());
}
