//! End-to-end command-line behavior: exit codes, output formats,
//! determinism, and the seed environment fallback.

use std::path::Path;
use std::process::{Command, Output};

fn picg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picg"))
        .args(args)
        .env_remove("PICG_SEED")
        .output()
        .expect("binary runs")
}

fn picg_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picg"))
        .args(args)
        .env_remove("PICG_SEED")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn grow_emits_an_edge_list_with_one_row_per_step() {
    let out = picg(&[
        "grow",
        "--model",
        "preset:connected:0.5",
        "--steps",
        "10",
        "--seed",
        "7",
        "--format",
        "edgelist",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11, "header plus m = 10 edges:\n{text}");
    assert_eq!(lines[0], "u,v");
}

#[test]
fn grow_pajek_layout() {
    let out = picg(&[
        "grow",
        "--model",
        "preset:two_vertex_connected:0.5",
        "--steps",
        "0",
        "--seed",
        "1",
        "--format",
        "pajek",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "*Vertices 3\n1 \"v1\"\n2 \"v2\"\n3 \"v3\"\n*Edges\n1 2\n2 3\n3 1\n"
    );
}

#[test]
fn grow_writes_trace_and_reimports_identically() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.csv");
    let trace_path = dir.path().join("t.csv");
    let out = picg(&[
        "grow",
        "--model",
        "preset:two_edge_connected:1/3:1/3",
        "--steps",
        "50",
        "--seed",
        "9",
        "--out",
        graph_path.to_str().unwrap(),
        "--trace",
        trace_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let trace = std::fs::read_to_string(&trace_path).unwrap();
    assert!(trace.starts_with("t,rule,left,dn,dm\n"));
    assert_eq!(trace.lines().count(), 51);

    // the export round-trips through the library reader with ids preserved
    let text = std::fs::read_to_string(&graph_path).unwrap();
    let reimported =
        picg::graph::read_edge_list_csv(std::io::Cursor::new(text.as_bytes()), None).unwrap();
    let (reference, _) = picg::rules::grow(
        &picg::dsl::presets::two_edge_connected(1.0 / 3.0, 1.0 / 3.0).unwrap(),
        picg::rules::StopRule::Steps(50),
        9,
    )
    .unwrap();
    assert_eq!(reimported.n(), reference.n());
    assert_eq!(reimported.edges(), reference.edges());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = picg(&[
            "grow",
            "--model",
            "preset:connected:0.25",
            "--vertices",
            "500",
            "--seed",
            "123",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn ensemble_report_is_independent_of_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for jobs in ["1", "4"] {
        let path = dir.path().join(format!("report{jobs}.csv"));
        let out = picg(&[
            "ensemble",
            "--model",
            "preset:two_vertex_connected:0.5",
            "--runs",
            "6",
            "--steps",
            "400",
            "--seed",
            "5",
            "--report",
            path.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        reports.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    assert!(reports[0].starts_with(b"degree,min,q1,median,q3,max,mean\n"));
}

#[test]
fn seed_env_fallback_and_flag_priority() {
    let baseline = picg(&[
        "grow", "--model", "preset:pa", "--steps", "20", "--seed", "99",
    ]);
    let via_env = picg_env(
        &["grow", "--model", "preset:pa", "--steps", "20"],
        "PICG_SEED",
        "99",
    );
    assert!(via_env.status.success(), "{}", stderr(&via_env));
    assert_eq!(stdout(&baseline), stdout(&via_env));

    // the flag wins over the environment
    let flag_wins = picg_env(
        &["grow", "--model", "preset:pa", "--steps", "20", "--seed", "99"],
        "PICG_SEED",
        "1000",
    );
    assert_eq!(stdout(&baseline), stdout(&flag_wins));
}

#[test]
fn missing_seed_is_a_flag_error() {
    let out = picg(&["grow", "--model", "preset:pa", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("--seed"));
}

#[test]
fn flag_errors_exit_2() {
    // clap-level: unknown flag
    let out = picg(&["grow", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // conflicting stop conditions
    let out = picg(&[
        "grow", "--model", "preset:pa", "--steps", "5", "--vertices", "10", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // no stop condition
    let out = picg(&["grow", "--model", "preset:pa", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed preset parameters
    let out = picg(&[
        "grow", "--model", "preset:connected:2.0", "--steps", "5", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn validate_reports_diagnostics_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.picg");
    std::fs::write(
        &path,
        "model bad\nbasis {\n  graph g prob 1 { vertices 1 edges [ ] }\n}\nrules {\n  rule a kind add_pendant prob 0.4\n  rule b kind add_edge prob 0.5\n}\n",
    )
    .unwrap();
    let out = picg(&["validate", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("5:1: rule weights sum to 0.9"), "{err}");

    std::fs::write(&path, "model ok\nbasis {\n  graph g prob 1 { vertices 3 edges [ 0-1 1-2 2-0 ] }\n}\nrules {\n  rule a kind subdivide_edge prob 1\n}\n").unwrap();
    let out = picg(&["validate", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn growing_a_model_file_matches_the_equivalent_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("connected.picg");
    let model = picg::dsl::presets::connected(0.5).unwrap();
    std::fs::write(&path, picg::dsl::serialize_model(&model)).unwrap();
    let from_file = picg(&[
        "grow",
        "--model",
        path.to_str().unwrap(),
        "--steps",
        "40",
        "--seed",
        "3",
    ]);
    let from_preset = picg(&[
        "grow",
        "--model",
        "preset:connected:0.5",
        "--steps",
        "40",
        "--seed",
        "3",
    ]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(stdout(&from_file), stdout(&from_preset));
}

#[test]
fn compare_command_on_small_distributions() {
    let dir = tempfile::tempdir().unwrap();
    let emp = dir.path().join("emp.csv");
    let pred = dir.path().join("pred.csv");
    std::fs::write(&emp, "d,p\n1,0.6\n2,0.4\n").unwrap();
    std::fs::write(&pred, "d,p\n1,0.5\n2,0.5\n").unwrap();
    let out = picg(&[
        "compare",
        "--empirical",
        emp.to_str().unwrap(),
        "--predicted",
        pred.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("predictor,tv,max_abs_dev,mean_emp,mean_pred\n"));
    // tv = (|0.6-0.5| + |0.4-0.5|) / 2, one ulp under 0.1
    assert!(text.contains("pred,9.9999999999999978e-2"), "{text}");
}

#[test]
fn degree_prediction_requires_a_family_with_a_law() {
    let out = picg(&[
        "predict", "--model", "preset:pa", "--what", "degree", "--dmax", "10",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = picg(&[
        "predict",
        "--model",
        "preset:connected:0.5",
        "--what",
        "degree",
        "--dmax",
        "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("d,mean_field,corrected,series\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn ensemble_invariant_monitor_needs_a_known_model_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("custom.picg");
    std::fs::write(
        &path,
        "model custom\nbasis {\n  graph g prob 1 { vertices 1 edges [ ] }\n}\nrules {\n  rule a kind add_pendant prob 1\n}\n",
    )
    .unwrap();
    let report = dir.path().join("report.csv");
    let out = picg(&[
        "ensemble",
        "--model",
        path.to_str().unwrap(),
        "--runs",
        "2",
        "--steps",
        "10",
        "--seed",
        "1",
        "--report",
        report.to_str().unwrap(),
        "--check-invariants",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot infer"), "{}", stderr(&out));
    assert!(!Path::new(&report).exists());
}

#[test]
fn nonexistent_model_file_is_a_runtime_error() {
    let out = picg(&[
        "grow", "--model", "/nonexistent/m.picg", "--steps", "1", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
