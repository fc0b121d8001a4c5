mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::Parser;
use cloner_sim::cli::{Cli, RunConfig, MANIFEST_SCHEMA};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_cloner-sim");

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("CLONER_SIM_THREADS")
        .output()
        .unwrap()
}

fn run_ok(args: &[&str], out: &Path) {
    let o = run(args, out);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares a produced file with its golden copy; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(produced: &Path, golden: &str) {
    let got = fs::read_to_string(produced).unwrap();
    let path = golden_dir().join(golden);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &got).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {golden}"));
    if got != want {
        // libm differences may move the last digits; anything beyond 1e-12 is a real change
        let tokens = |s: &str| -> Vec<String> {
            s.replace([',', ':', '[', ']', '{', '}'], " ")
                .split_whitespace()
                .map(str::to_owned)
                .collect()
        };
        let (g, w) = (tokens(&got), tokens(&want));
        assert_eq!(g.len(), w.len(), "{golden} changed shape");
        for (a, b) in g.iter().zip(&w) {
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(y)) => assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0), "{golden}: {a} vs {b}"),
                _ => assert_eq!(a, b, "{golden}"),
            }
        }
    }
}

fn read_csv(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_owned();
    let rows = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn validate_manifest(dir: &Path) -> Value {
    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.join("MANIFEST.json")).unwrap()).unwrap();
    let schema: Value = serde_json::from_str(MANIFEST_SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    if let Err(errors) = compiled.validate(&manifest) {
        let messages: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("manifest invalid: {messages:?}");
    };
    manifest
}

#[test]
fn dist_unitary_vanishes_on_even_counts() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &[
            "dist",
            "--model",
            "unitary",
            "--N",
            "101",
            "--theta-a",
            "1/2",
            "--theta-b",
            "1/2",
            "--dphi",
            "0",
        ],
        dir.path(),
    );
    let (header, rows) = read_csv(&dir.path().join("dist_unitary_N101.csv"));
    assert_eq!(header, "j,probability");
    assert_eq!(rows.len(), 102);
    for row in rows {
        if (row[0] as usize).is_multiple_of(2) {
            assert_eq!(row[1], 0.0);
        }
    }
    validate_manifest(dir.path());
}

#[test]
fn dist_measure_prepare_single_photon() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &[
            "dist",
            "--model",
            "mp-eq",
            "--N",
            "1",
            "--theta-a",
            "1/2",
            "--theta-b",
            "1/2",
            "--dphi",
            "0",
        ],
        dir.path(),
    );
    check_golden(&dir.path().join("dist_mp-eq_N1.csv"), "dist_mp-eq_N1.csv");
    check_golden(&dir.path().join("MANIFEST.json"), "dist_manifest.json");
}

#[test]
fn dist_several_models_with_chart() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &[
            "dist",
            "--model",
            "unitary",
            "--model",
            "mp-eq",
            "--model",
            "mp-sq",
            "--tau",
            "1",
            "--N",
            "7",
            "--theta-a",
            "1/2",
            "--theta-b",
            "1/3",
            "--phi-a",
            "1/4",
            "--format",
            "svg+csv",
        ],
        dir.path(),
    );
    for name in ["dist_unitary_N7.csv", "dist_mp-eq_N7.csv", "dist_mp-sq-1_N7.csv"] {
        check_golden(&dir.path().join(name), name);
    }
    let svg = fs::read_to_string(dir.path().join("dist_N7.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn dist_json_records_are_sorted() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &["dist", "--model", "unitary", "--N", "3", "--format", "json"],
        dir.path(),
    );
    let text = fs::read_to_string(dir.path().join("dist_unitary_N3.json")).unwrap();
    check_golden(&dir.path().join("dist_unitary_N3.json"), "dist_unitary_N3.json");
    let first = text.find("\"j\"").unwrap();
    let second = text.find("\"probability\"").unwrap();
    assert!(first < second);
}

#[test]
fn commands_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "sweep",
        "--model",
        "unitary",
        "--model",
        "mp-sq:1",
        "--N",
        "9,15",
        "--sigma",
        "1,3,5",
        "--theta-b",
        "1/12",
        "--format",
        "svg+csv",
    ];
    run_ok(&args, a.path());
    run_ok(&args, b.path());
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 3);
    for name in names {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn sweep_rows_and_unbinned_column() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &[
            "sweep", "--model", "unitary", "--model", "mp-eq", "--N", "5,7", "--sigma", "1,3,5",
        ],
        dir.path(),
    );
    check_golden(&dir.path().join("sweep.csv"), "sweep.csv");
    let (header, rows) = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!(header, "N,sigma,sigma_over_N,distance");
    assert_eq!(rows.len(), 2 * 3);

    let setting = cloner_sim::cloners::MeasurementSetting::equatorial(0.0).unwrap();
    for row in rows.iter().filter(|r| r[1] == 1.0) {
        let n = row[0] as usize;
        let p = cloner_sim::cloners::unitary_distribution(n, &setting).unwrap();
        let q = cloner_sim::cloners::mp_equatorial_distribution(n, &setting).unwrap();
        let d = cloner_sim::analysis::manhattan_distance(&p, &q).unwrap();
        assert!((row[3] - d).abs() <= 1e-11);
    }
}

#[test]
fn witness_reports() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &["witness", "--model", "unitary", "--gain", "0", "--cutoff", "1"],
        dir.path(),
    );
    check_golden(&dir.path().join("witness.json"), "witness_singlet.json");
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("witness.json")).unwrap()).unwrap();
    assert_eq!(report["excess"], 2.0);

    run_ok(
        &["witness", "--model", "unitary", "--gain", "0.5", "--cutoff", "40"],
        dir.path(),
    );
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("witness.json")).unwrap()).unwrap();
    assert!((report["excess"].as_f64().unwrap() - 2.0).abs() <= 1e-6);

    run_ok(&["witness", "--model", "mp-eq", "--N", "101"], dir.path());
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("witness.json")).unwrap()).unwrap();
    assert!(report["excess"].as_f64().unwrap() <= 1e-9);
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["excess", "model", "parameters", "tail_bound"]);
    validate_manifest(dir.path());
}

#[test]
fn reproduce_fig2() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["reproduce", "fig2"], dir.path());
    check_golden(&dir.path().join("fig2_distances.csv"), "fig2_distances.csv");
    let manifest = validate_manifest(dir.path());
    assert_eq!(manifest["parameters"]["photons"][0], 101);
    let text = fs::read_to_string(dir.path().join("fig2_distances.csv")).unwrap();
    let value = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim_start_matches(',')
            .parse()
            .unwrap()
    };
    assert!(value("distance_pair_binned") <= 0.1 * value("distance_unbinned"));
    for name in [
        "fig2_unitary.csv",
        "fig2_mp-eq.csv",
        "fig2_unitary_pairs.csv",
        "fig2_mp-eq_pairs.csv",
        "fig2.svg",
        "fig2_pairs.svg",
    ] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn reproduce_fig2_at_requested_even_n() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reproduce", "fig2", "--N", "100"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);

    run_ok(&["reproduce", "fig2", "--N", "100", "--allow-approx-N"], dir.path());
    let manifest = validate_manifest(dir.path());
    let sub = &manifest["parameters"]["substitutions"][0];
    assert_eq!(
        (sub["requested"].as_u64(), sub["used"].as_u64()),
        (Some(100), Some(101))
    );
    assert_eq!(manifest["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn reproduce_fig3() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["reproduce", "fig3", "--format", "csv"], dir.path());
    check_golden(&dir.path().join("fig3_sweep.csv"), "fig3_sweep.csv");
    check_golden(&dir.path().join("fig3_inset.csv"), "fig3_inset.csv");
    check_golden(&dir.path().join("MANIFEST.json"), "fig3_manifest.json");
    validate_manifest(dir.path());
    assert!(!dir.path().join("fig3.svg").exists());
}

#[test]
fn usage_errors_exit_2_and_leave_nothing_behind() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let cases: [&[&str]; 7] = [
        &["dist", "--model", "unitary", "--N", "100"],
        &["dist", "--model", "mp-sq:3", "--N", "5"],
        &["dist", "--model", "cloner", "--N", "5"],
        &["dist", "--model", "unitary", "--N", "5", "--theta-a", "0.5"],
        &["dist", "--model", "unitary", "--N", "5", "--dphi", "1", "--phi-a", "1"],
        &["sweep", "--model", "unitary", "--N", "5", "--sigma", "1"],
        &["reproduce", "fig4"],
    ];
    for args in cases {
        let o = run(args, &out);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(!out.exists(), "{args:?} left files behind");
    }
    let o = run(
        &[
            "sweep", "--model", "unitary", "--model", "mp-eq", "--N", "5", "--sigma", "2",
        ],
        &out,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sweep", "--model", "unitary", "--model", "mp-eq", "--N", "5,7", "--sigma", "1,3,5",
    ];
    let o = Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(dir.path())
        .env("CLONER_SIM_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    check_golden(&dir.path().join("sweep.csv"), "sweep.csv");
    let o = Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(dir.path())
        .env("CLONER_SIM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_round_trips_through_json() {
    for argv in [
        vec![
            "cloner-sim",
            "dist",
            "--model",
            "mp-sq:2",
            "--N",
            "11",
            "--theta-b",
            "1/12",
            "--dphi",
            "1/3",
        ],
        vec![
            "cloner-sim",
            "sweep",
            "--model",
            "unitary",
            "--model",
            "mp-eq",
            "--N",
            "10,21",
            "--sigma",
            "1,3",
            "--allow-approx-N",
        ],
        vec![
            "cloner-sim",
            "witness",
            "--model",
            "unitary",
            "--gain",
            "0.25",
            "--cutoff",
            "12",
        ],
        vec!["cloner-sim", "reproduce", "fig3", "--format", "json"],
    ] {
        let config = Cli::try_parse_from(&argv).unwrap().into_config().unwrap();
        let json = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, config, "{argv:?}");
    }
}
