use std::path::Path;

use plstat_core::inference::CiMethod;
use plstat_core::pipeline::{run_pipeline, ExperimentConfig, ObjectKind};
use plstat_core::ErrorKind;

fn small(object: ObjectKind, out: &Path) -> ExperimentConfig {
    ExperimentConfig {
        object,
        n_points: 40,
        n_diagrams: 12,
        bootstrap_b: 60,
        inner_b: 6,
        h_min: 0.01,
        h_max: 0.2,
        h_step: 0.01,
        master_seed: 3,
        output_dir: out.to_path_buf(),
        ..Default::default()
    }
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}

#[test]
fn sphere_bundle_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let bundle = run_pipeline(&small(ObjectKind::Sphere, &out)).unwrap();
    assert_eq!(bundle.intervals.intervals.len(), 6);
    for ci in &bundle.intervals.intervals {
        assert!(ci.lower <= ci.upper, "{ci:?}");
    }
    assert!(bundle.interval(CiMethod::BootStudentized).is_some());
    assert_eq!(bundle.kde_interval().method, CiMethod::KdeQuantile);

    let table = String::from_utf8(read(&out, "summary_table.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "method,lower,upper,width");
    assert_eq!(lines.len(), 8);

    // Every emitted file is listed with its hash.
    let listed: Vec<&str> = bundle.manifest.iter().map(|m| m.path.as_str()).collect();
    for name in [
        "sample.csv",
        "intervals.json",
        "risk.json",
        "density.csv",
        "cv_curve.svg",
        "diagrams/diagram_011.csv",
    ] {
        assert!(listed.contains(&name), "{name} missing from manifest");
    }
    for m in &bundle.manifest {
        assert_eq!(read(&out, &m.path).len() as u64, m.bytes);
    }
    assert!(out.join("manifest.json").exists());
    // No staging directory left behind.
    let leftovers: Vec<_> = std::fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(leftovers.len(), 1, "{leftovers:?}");
}

#[test]
fn torus_bundle_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        major_radius: 2.0,
        minor_radius: 1.0,
        ..small(ObjectKind::Torus, &tmp.path().join("t"))
    };
    let bundle = run_pipeline(&cfg).unwrap();
    assert_eq!(bundle.intervals.intervals.len(), 6);
    assert!(bundle
        .intervals
        .intervals
        .iter()
        .all(|ci| ci.lower <= ci.upper));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let a = run_pipeline(&small(ObjectKind::Sphere, &tmp.path().join("a"))).unwrap();
    let b = run_pipeline(&small(ObjectKind::Sphere, &tmp.path().join("b"))).unwrap();
    let strip = |m: &[plstat_core::pipeline::ManifestEntry]| -> Vec<(String, String)> {
        m.iter()
            .filter(|e| e.path != "config.toml")
            .map(|e| (e.path.clone(), e.sha256.clone()))
            .collect()
    };
    // config.toml differs only by output_dir.
    assert_eq!(strip(&a.manifest), strip(&b.manifest));
    let other = run_pipeline(&ExperimentConfig {
        master_seed: 4,
        ..small(ObjectKind::Sphere, &tmp.path().join("c"))
    })
    .unwrap();
    assert_ne!(strip(&a.manifest), strip(&other.manifest));
}

#[test]
fn single_diagram_fails_at_normal_theory() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("one");
    let cfg = ExperimentConfig {
        n_diagrams: 1,
        ..small(ObjectKind::Sphere, &out)
    };
    let err = run_pipeline(&cfg).unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("normal_theory") && msg.contains("sample too small"),
        "{msg}"
    );
    assert_eq!(err.kind(), ErrorKind::Numeric);
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(tmp.path()).unwrap().count(), 0);
}

#[test]
fn failed_run_keeps_previous_output() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("keep");
    run_pipeline(&small(ObjectKind::Sphere, &out)).unwrap();
    let before = read(&out, "manifest.json");
    let bad = ExperimentConfig {
        max_scale: 50.0,
        simplex_cap: 1000,
        ..small(ObjectKind::Sphere, &out)
    };
    let err = run_pipeline(&bad).unwrap_err();
    assert!(err.to_string().contains("persistence"), "{err}");
    assert_eq!(read(&out, "manifest.json"), before);
}

#[test]
fn csv_object() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data.csv");
    let mut text = String::new();
    for i in 0..60 {
        let t = i as f64 * 0.1;
        text.push_str(&format!(
            "{i},{},{},{},{}\n",
            if i % 2 == 0 { "M" } else { "B" },
            t.cos(),
            t.sin(),
            0.1 * t
        ));
    }
    std::fs::write(&data, text).unwrap();
    let cfg = ExperimentConfig {
        object: ObjectKind::Csv,
        csv_path: Some(data),
        n_points: 30,
        max_scale: 1.0,
        ..small(ObjectKind::Csv, &tmp.path().join("c"))
    };
    let bundle = run_pipeline(&cfg).unwrap();
    assert_eq!(bundle.stats.n, 12);
}
