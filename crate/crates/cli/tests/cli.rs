//! End-to-end tests of the `moebius-floquet` binary.

use std::path::Path;
use std::process::{Command, Output};

use moebius_floquet_core::sweep::read_binary;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_moebius-floquet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_matrix_ep() {
    let out = run(&["classify", "--matrix", "0,1,0,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["class"], "Parabolic");
    assert_eq!(v["is_ep"], true);
}

#[test]
fn classify_matrix_complex_entries() {
    let out = run(&["classify", "--matrix", "1+0i,1,-1,-1"]);
    let v = stdout_json(&out);
    assert_eq!(v["is_ep"], true);
    // collapsed eigenvalues at tau = 0
    assert!(v["eigenvalues"][0][0].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn classify_curve_centered_circle_is_floquet_ep() {
    let out = run(&["classify", "--curve", "circular", "--delta", "0", "--rho", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["class"], "Parabolic");
    assert_eq!(v["is_floquet_ep"], true);
}

#[test]
fn classify_curve_stable_circle() {
    let out = run(&["classify", "--curve", "circular", "--delta", "1", "--rho", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["class"], "Elliptic");
    assert_eq!(v["is_floquet_ep"], false);
    // lambda = +-sqrt(b Delta) = +-1
    let l0 = v["lambda"][0][0].as_f64().unwrap();
    assert!((l0.abs() - 1.0).abs() < 1e-6);
}

#[test]
fn classify_without_input_is_config_error() {
    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_matrix_arity_is_config_error() {
    let out = run(&["classify", "--matrix", "0,1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

fn read_csv_rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).expect("csv readable");
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn portrait_outputs_roundtrip_and_are_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let out_c = dir.path().join("c");
    let args = |out: &Path, seed: &str| {
        vec![
            "portrait".to_string(),
            "--mu".into(), "i".into(),
            "--samples".into(), "16".into(),
            "--steps".into(), "24".into(),
            "--t-max".into(), "6".into(),
            "--seed".into(), seed.into(),
            "--out".into(), out.display().to_string(),
        ]
    };
    assert!(bin().args(args(&out_a, "42")).output().unwrap().status.success());
    assert!(bin().args(args(&out_b, "42")).output().unwrap().status.success());
    assert!(bin().args(args(&out_c, "43")).output().unwrap().status.success());

    let csv_a = std::fs::read(out_a.join("portrait.csv")).unwrap();
    let csv_b = std::fs::read(out_b.join("portrait.csv")).unwrap();
    let csv_c = std::fs::read(out_c.join("portrait.csv")).unwrap();
    assert_eq!(csv_a, csv_b, "same seed must give byte-identical CSV");
    assert_ne!(csv_a, csv_c, "different seed must change the sample set");

    // re-parse: every row carries a unit sphere point and finite time
    let rows = read_csv_rows(&out_a.join("portrait.csv"));
    assert_eq!(rows.len(), 16 * 24);
    for row in &rows {
        assert_eq!(row.len(), 8);
        let t: f64 = row[2].parse().unwrap();
        assert!(t.is_finite());
        let x: f64 = row[5].parse().unwrap();
        let y: f64 = row[6].parse().unwrap();
        let z: f64 = row[7].parse().unwrap();
        assert!((x * x + y * y + z * z - 1.0).abs() < 1e-9);
    }

    let svg = std::fs::read_to_string(out_a.join("portrait.svg")).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<polygon")); // eigenstate markers
    assert!(svg.len() < 20_000_000);
}

#[test]
fn trajectory_outputs_csv_svg_and_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "trajectory",
        "--curve", "circular",
        "--delta", "0",
        "--rho", "1",
        "--state", "eig0",
        "--periods", "3",
        "--samples-per-period", "8",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let rows = read_csv_rows(&dir.path().join("trajectory.csv"));
    assert_eq!(rows.len(), 2 * (3 * 8 + 1)); // two components per sample
    for row in &rows {
        assert_eq!(row.len(), 5);
        assert!(row[0] == "1" || row[0] == "2");
        let re: f64 = row[3].parse().unwrap();
        assert!(re.is_finite());
    }

    let spectrum: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("spectrum.json")).unwrap())
            .unwrap();
    assert_eq!(spectrum["is_floquet_ep"], true);
    assert!(spectrum["det_residual"].as_f64().unwrap() < 1e-8);

    let svg = std::fs::read_to_string(dir.path().join("trajectory.svg")).unwrap();
    assert!(svg.contains("psi1") && svg.contains("psi2"));
}

#[test]
fn trajectory_explicit_state_components() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "trajectory",
        "--curve", "quadratic-pair",
        "--delta", "0",
        "--state", "1,0.2+0.1i",
        "--periods", "2",
        "--samples-per-period", "4",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn stability_outputs_grid_and_is_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let base = vec![
        "stability",
        "--family", "circular",
        "--delta-min", "-0.4",
        "--delta-max", "0.8",
        "--delta-count", "7",
        "--rho-min", "0",
        "--rho-max", "1",
        "--rho-count", "4",
        "--rel-tol", "1e-8",
    ];
    let out_1 = dir.path().join("w1");
    let out_2 = dir.path().join("w2");
    for (workers, out) in [("1", &out_1), ("2", &out_2)] {
        let mut args: Vec<&str> = base.clone();
        args.extend(["--workers", workers, "--out", out.to_str().unwrap()]);
        let o = run(&args);
        assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    }
    let csv_1 = std::fs::read(out_1.join("grid.csv")).unwrap();
    let csv_2 = std::fs::read(out_2.join("grid.csv")).unwrap();
    assert_eq!(csv_1, csv_2);
    let bin_1 = std::fs::read(out_1.join("grid.bin")).unwrap();
    let bin_2 = std::fs::read(out_2.join("grid.bin")).unwrap();
    assert_eq!(bin_1, bin_2);

    // binary payload re-parses and matches the CSV
    let data = read_binary(bin_1.as_slice()).unwrap();
    assert_eq!(data.deltas.len(), 7);
    assert_eq!(data.rhos.len(), 4);
    let rows = read_csv_rows(&out_1.join("grid.csv"));
    assert_eq!(rows.len(), 28);
    for (row, class) in rows.iter().zip(&data.classes) {
        assert_eq!(row[2], class.map(|c| c.name().to_string()).unwrap_or("Unresolved".into()));
    }
    // the delta = 0 column is the Floquet EP line
    assert!(rows.iter().any(|r| r[2] == "Parabolic"));

    let svg = std::fs::read_to_string(out_1.join("stability.svg")).unwrap();
    assert!(svg.len() < 20_000_000);
    assert!(svg.contains("#3b6fb6") || svg.contains("#f4d35e"));
}

#[test]
fn stability_partial_sweep_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "stability",
        "--family", "elliptical",
        "--delta-min", "0",
        "--delta-max", "1",
        "--delta-count", "3",
        "--rho-min", "0",
        "--rho-max", "1",
        "--rho-count", "3",
        "--max-steps", "5",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    // partial grid still written, unresolved cells marked
    let rows = read_csv_rows(&dir.path().join("grid.csv"));
    assert!(rows.iter().any(|r| r[2] == "Unresolved"));
}

#[test]
fn config_file_supplies_curve_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.toml");
    std::fs::write(
        &cfg_path,
        r#"
[curve]
family = "circular"
delta = "0"
rho = 1.0
"#,
    )
    .unwrap();
    let out = run(&["classify", "--config", cfg_path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["is_floquet_ep"], true);

    // flag overrides the file's delta
    let out = run(&[
        "classify",
        "--config", cfg_path.to_str().unwrap(),
        "--curve", "circular",
        "--delta", "1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["class"], "Elliptic");
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("bad.toml");
    std::fs::write(&cfg_path, "[curve]\nradius = 1.0\n").unwrap();
    let out = run(&["classify", "--config", cfg_path.to_str().unwrap(), "--matrix", "0,1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}
