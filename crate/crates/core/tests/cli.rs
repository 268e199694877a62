use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const C1_SPEC: &str = "[code C1]\nring = F4\nconstruction = four_circulant\nrA = (1,w,w,0)\nrB = (w,W,W,w)\n";

fn sdf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdf"))
        .args(args)
        .output()
        .expect("run sdf")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not a report ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_writes_a_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("c1.sdf");
    fs::write(&spec, C1_SPEC).unwrap();
    let out = sdf(&["build", path(&spec)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["schema"], "sdf.report/1");
    let c = &r["results"][0]["code"];
    assert_eq!(c["ring"], "F4");
    assert_eq!(c["length"], 16);
    assert_eq!(c["rows"].as_array().unwrap().len(), 8);
    assert_eq!(c["rows"][0], "(1,0,0,0,0,0,0,0,1,w,w,0,w,W,W,w)");
}

#[test]
fn malformed_spec_names_the_token() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.sdf");
    fs::write(&spec, C1_SPEC.replace("(1,w,w,0)", "(q1,w,w,0)")).unwrap();
    let out = sdf(&["build", path(&spec)]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("q1"), "{err}");
    assert!(err.contains("4:"), "no line number in {err}");
}

#[test]
fn analyze_j1_and_a_wrong_claim() {
    let out = sdf(&[
        "analyze",
        "J1",
        "--self-dual",
        "--type",
        "--mindist",
        "--params",
        "--expect-beta",
        "48",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let a = &report(&out)["results"][0]["analysis"];
    assert_eq!(a["n"], 64);
    assert_eq!(a["d"], 12);
    assert_eq!(a["self_dual"], true);
    assert_eq!(a["params"]["family"], "W64_2");
    assert_eq!(a["params"]["beta"], 48);

    let out = sdf(&["analyze", "J1", "--params", "--expect-beta", "49"]);
    assert_eq!(code(&out), 1);
    let checks = &report(&out)["results"][0]["analysis"]["checks"];
    assert_eq!(checks[0]["found"], "48");
    assert_eq!(checks[0]["ok"], false);
}

#[test]
fn analyze_a_binary_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("h8.txt");
    fs::write(&m, "11110000\n00111100\n00001111\n01010101\n").unwrap();
    let out = sdf(&[
        "analyze",
        path(&m),
        "--matrix",
        "--type",
        "--mindist",
        "--expect-d",
        "4",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let a = &report(&out)["results"][0]["analysis"];
    assert_eq!(a["code_type"], "TypeII");
    assert_eq!(a["d"], 4);
}

#[test]
fn extend_and_reanalyze() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("B", "3u3uu3310010u3u0", "3", "160"),
        ("A", "30u101113u3131030u10uu0uu0111u33", "1", "172"),
    ];
    for (theorem, x, c, beta) in cases {
        let file = dir.path().join(format!("ext{theorem}.json"));
        let out = sdf(&[
            "extend",
            "C64",
            "--theorem",
            theorem,
            "--x",
            x,
            "--c",
            c,
            "-o",
            path(&file),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let out = sdf(&[
            "analyze",
            path(&file),
            "--self-dual",
            "--params",
            "--expect-d",
            "12",
            "--expect-gamma",
            "0",
            "--expect-beta",
            beta,
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(report(&out)["results"][0]["analysis"]["params"]["family"], "W68_2");
    }
}

#[test]
fn extend_rejects_a_non_unit() {
    let out = sdf(&["extend", "C64", "--theorem", "B", "--x", "3u3uu3310010u3u0", "--c", "u"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("unit"), "{}", stderr(&out));
}

#[test]
fn build_then_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("c1.sdf");
    let json = dir.path().join("c1.json");
    fs::write(&spec, C1_SPEC).unwrap();
    assert_eq!(code(&sdf(&["build", path(&spec), "-o", path(&json)])), 0);
    let from_file = sdf(&["analyze", path(&json), "--self-dual", "--mindist"]);
    let from_lib = sdf(&["analyze", "C1", "--self-dual", "--mindist"]);
    assert_eq!(code(&from_file), 0);
    let a = &report(&from_file)["results"][0]["analysis"];
    assert_eq!(a, &report(&from_lib)["results"][0]["analysis"]);
    assert_eq!(a["n"], 32);
    assert_eq!(a["self_dual"], true);
}

#[test]
fn reproduce_small_tables() {
    let out = sdf(&["reproduce", "--table", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let summary = &report(&out)["results"][0]["summary"];
    assert_eq!(summary["fail"], 0);
    assert!(summary["pass"].as_u64().unwrap() > 0);

    let out = sdf(&["reproduce", "--table", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let t = &report(&out)["results"][0];
    assert_eq!(t["rows"].as_array().unwrap().len(), 16);
    assert_eq!(t["summary"]["pass"], 16);
}

#[test]
fn reproduce_reports_flagged_rows() {
    let out = sdf(&["reproduce", "--table", "5"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    let t = &r["results"][0];
    assert_eq!(t["summary"]["flagged"], 1);
    assert_eq!(t["summary"]["fail"], 0);
    assert_eq!(t["rows"].as_array().unwrap().len(), 43);
    let anomalies = r["anomalies"].as_array().unwrap();
    assert!(
        anomalies.iter().any(|a| a.as_str().unwrap().starts_with("T5.40")),
        "{anomalies:?}"
    );
}

#[test]
fn reproduce_refusals() {
    let out = sdf(&["reproduce", "--table", "12"]);
    assert_eq!(code(&out), 2);

    let out = sdf(&["reproduce", "--table", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--deep"), "{}", stderr(&out));
}

#[test]
fn search_output_does_not_depend_on_jobs() {
    let run = |jobs: &str| {
        let out = sdf(&[
            "--jobs",
            jobs,
            "search",
            "--mode",
            "extensions",
            "--base",
            "C64",
            "--seed",
            "7",
            "--budget",
            "300",
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn infeasible_lift_target_is_noted() {
    let out = sdf(&[
        "search",
        "--mode",
        "lifts",
        "--base",
        "C1",
        "--seed",
        "1",
        "--budget",
        "5",
        "--target-d",
        "20",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"][0]["candidates_examined"], 0);
    let note = r["results"][0]["notes"][0].as_str().unwrap();
    assert!(note.contains("no lift can reach it"), "{note}");
}

#[test]
fn extension_hit_is_verified_independently() {
    let out = sdf(&[
        "search",
        "--mode",
        "extensions",
        "--base",
        "C64",
        "--seed",
        "7",
        "--budget",
        "1000",
        "--target-d",
        "12",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    let hit = &r["results"][0]["hits"][0];
    assert_eq!(hit["index"], 422);
    let p = &hit["provenance"];
    let beta = hit["params"]["beta"].to_string();
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("hit.json");
    let out = sdf(&[
        "extend",
        "C64",
        "--theorem",
        p["theorem"].as_str().unwrap(),
        "--x",
        p["x"].as_str().unwrap(),
        "--c",
        p["c"].as_str().unwrap(),
        "-o",
        path(&file),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = sdf(&[
        "analyze",
        path(&file),
        "--params",
        "--expect-d",
        "12",
        "--expect-beta",
        &beta,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&sdf(&["search", "--mode", "lifts", "--base", "C1"])), 2);
    let out = sdf(&["search", "--mode", "lifts", "--base", "NOPE", "--seed", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("NOPE"));
    assert_eq!(code(&sdf(&["analyze", "/nonexistent/file.json"])), 2);
}
