use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_pctoep");

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn pctoep(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn diagnostic(out: &Output) -> Value {
    let err = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(err.lines().last().unwrap()).unwrap()
}

#[test]
fn gen_lpc_csv() {
    let out = pctoep(&["gen", "--kind", "lpc", "--x", "2", "--n", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], "1,2,0.5,2,0.5");
    assert!(rows.iter().all(|r| r.split(',').count() == 5));
}

#[test]
fn gen_variants() {
    let out = pctoep(&["gen", "--kind", "cpc", "--x", "3", "--n", "4", "--placement", "2,3"]);
    assert_eq!(stdout(&out).lines().nth(1).unwrap(), "1,1,3,1");
    let out = pctoep(&["gen", "--kind", "ckpc", "--x", "2", "--n", "7", "--k", "2", "--offsets", "1,3"]);
    assert_eq!(stdout(&out).lines().next().unwrap(), "1,2,1,2,0.5,1,0.5");
    let out = pctoep(&["gen", "--kind", "cc", "--n", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["entries"][2][0], 1.0);
}

#[test]
fn gen_then_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, x, n, ext) in [("lpc", "2", "6", "csv"), ("cpc", "0.4", "5", "json"), ("fpc", "3.375", "7", "csv")] {
        let file = dir.path().join(format!("m.{ext}"));
        let file = file.to_str().unwrap();
        let out = pctoep(&["gen", "--kind", kind, "--x", x, "--n", n, "--out", file]);
        assert!(out.status.success());

        let from_file: Value = serde_json::from_slice(&pctoep(&["analyze", "--input", file]).stdout).unwrap();
        let in_memory: Value =
            serde_json::from_slice(&pctoep(&["analyze", "--kind", kind, "--x", x, "--n", n]).stdout).unwrap();
        for field in ["lambda_max", "ci", "kii", "ci_upper"] {
            let a = from_file[field].as_f64().unwrap();
            let b = in_memory[field].as_f64().unwrap();
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{kind} {field}: {a} vs {b}");
        }
        assert_eq!(from_file["n"], in_memory["n"]);
        assert_eq!(from_file["structure"], in_memory["structure"]);
    }
}

#[test]
fn analyze_csv_report() {
    let out = pctoep(&["analyze", "--kind", "lpc", "--x", "2", "--n", "5", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,x,lambda_max,ci,kii,ci_upper,bounds_lower,bounds_upper,closed_form_ci,all_hold"
    );
    let f: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(f[0], "5");
    assert!((f[2].parse::<f64>().unwrap() - 6.0).abs() < 1e-10);
    assert_eq!(f[8], "0.25");
    assert_eq!(f[9], "true");
}

#[test]
fn discs_lpc_figure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fig.svg");
    let out = pctoep(&["discs", "--kind", "lpc", "--x", "2", "--n", "5", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&file).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains(r#"width="640" height="640""#));

    let discs: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="disc""#)).collect();
    assert_eq!(discs.len(), 1);
    assert!(discs[0].contains(r#"data-center="1" data-radius="5""#));
    assert!(discs[0].contains(r#"fill="none""#));
    // radius 5 spans 1.1 * 5 in half the canvas
    assert!(discs[0].contains(r#"r="290.909""#));

    let markers: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="eigenvalue""#)).collect();
    assert_eq!(markers.len(), 5);
    assert_eq!(markers.iter().filter(|l| l.contains(r#"data-re="-0.250000""#)).count(), 4);
    assert_eq!(markers.iter().filter(|l| l.contains(r#"data-re="6.000000""#)).count(), 1);

    assert_eq!(svg, golden("lpc_2_5.svg"));
}

#[test]
fn discs_golden_cpc() {
    let out = pctoep(&["discs", "--kind", "cpc", "--x", "3", "--n", "6"]);
    assert_eq!(stdout(&out), golden("cpc_3_6.svg"));
}

#[test]
fn discs_without_closed_spectrum_marks_perron_root() {
    let out = pctoep(&["discs", "--kind", "lpc", "--x", "2", "--n", "4"]);
    let svg = stdout(&out);
    let markers: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="eigenvalue""#)).collect();
    assert_eq!(markers.len(), 1);
    assert!(markers[0].contains(r#"data-re="4.644739""#));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["sweep"][..],
        &["verify", "--format", "json"],
        &["discs", "--kind", "ckpc", "--x", "5", "--n", "9", "--k", "3"],
        &["analyze", "--kind", "fpc", "--x", "2", "--n", "8"],
    ] {
        assert_eq!(pctoep(args).stdout, pctoep(args).stdout, "{args:?}");
    }
}

#[test]
fn sweep_rows_and_json() {
    let out = pctoep(&["sweep", "--x", "2,3", "--n", "4", "--format", "json"]);
    assert!(out.status.success());
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["one_plus_H"], 4.6);
    assert_eq!(rows[1]["n"], 4);
    assert_eq!(rows[1]["holds"], true);
}

#[test]
fn sweep_rejects_below_one_unless_experimental() {
    let out = pctoep(&["sweep", "--x", "0.5", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "XNotAboveOne");
    let out = pctoep(&["sweep", "--x", "0.5", "--n", "4", "--experimental", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn verify_small_grid() {
    let out = pctoep(&["verify", "--x", "2,5", "--n", "3:8:1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("proven     oracle_agreement"));
    assert!(text.contains("conjecture hypothesis_h_g"));
    assert!(text.ends_with("all proven checks pass\n"));
}

#[test]
fn exit_codes() {
    // usage: missing order, unknown subcommand, malformed range
    assert_eq!(pctoep(&["gen", "--kind", "lpc", "--x", "2"]).status.code(), Some(2));
    assert_eq!(pctoep(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pctoep(&["sweep", "--x", "2:9"]).status.code(), Some(2));
    assert_eq!(pctoep(&["analyze"]).status.code(), Some(2));

    let out = pctoep(&["gen", "--kind", "cpc", "--x", "1", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "DegenerateX");

    let out = pctoep(&["gen", "--kind", "ckpc", "--x", "2", "--n", "6", "--k", "3"]);
    assert_eq!(diagnostic(&out)["error"], "KTooLarge");

    let out = pctoep(&["analyze", "--kind", "lpc", "--x", "9", "--n", "12", "--max-iter", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let d = diagnostic(&out);
    assert_eq!(d["error"], "NoConvergence");
    assert!(d["message"].as_str().unwrap().contains("2 iterations"));
}

#[test]
fn bad_input_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.csv");
    std::fs::write(&file, "1,2\n3,1\n").unwrap();
    let out = pctoep(&["analyze", "--input", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "ReciprocityViolation");

    let out = pctoep(&["analyze", "--input", dir.path().join("missing.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "Io");
}
