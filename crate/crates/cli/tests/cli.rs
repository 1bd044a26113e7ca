use std::path::Path;
use std::process::{Command, Output};

use spectral_torsion_cli::output::{JobOutput, VerifyRun};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spectral-torsion"));
    cmd.env_remove("SPECTRAL_TORSION_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const TORSION_VECTOR_4: &str = r#"{
  "dimension": 4,
  "case": "torsion_vector",
  "u": ["1", "0", "0", "0"],
  "v": ["0", "1", "0", "0"],
  "w": ["0", "0", "1", "0"],
  "T": [[1, 2, 3, "1"]],
  "Y": ["1/2", "0", "-3", "0"],
  "with_boundary": false,
  "numeric_eval": true
}"#;

#[test]
fn compute_torsion_vector_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "job.json", TORSION_VECTOR_4);
    let out = run(&["compute", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: JobOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.total.canonical, "-8·tr_F(Φ)·vol(S^3)");
    assert_eq!(report.boundary.canonical, "0");
    assert!(report.matches);
    let numeric = report.numeric.unwrap();
    let expected = -8.0 * 2.0 * std::f64::consts::PI.powi(2);
    assert!((numeric.total.re - expected).abs() < 1e-9);
    assert_eq!(numeric.total.im, 0.0);
}

#[test]
fn compute_grading_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{
  "dimension": 6,
  "case": "grading",
  "u": ["1", "2", "0", "0", "0", "1/3"],
  "v": ["0", "1", "0", "-1", "0", "0"],
  "w": ["0", "0", "1", "0", "5/2", "0"]
}"#;
    let out = run(&["compute", &write_config(dir.path(), "g.json", body)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: JobOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.total.canonical, "0");
    assert!(report.matches);
    assert!(report.numeric.is_none());
}

#[test]
fn compute_with_boundary_matches() {
    let dir = tempfile::tempdir().unwrap();
    // u_n g(v,w) - v_n g(u,w) + w_n g(u,v) = 2
    let body = TORSION_VECTOR_4
        .replace(r#""u": ["1", "0", "0", "0"]"#, r#""u": ["1", "0", "0", "1"]"#)
        .replace(r#""v": ["0", "1", "0", "0"]"#, r#""v": ["0", "1", "0", "1"]"#)
        .replace(r#""w": ["0", "0", "1", "0"]"#, r#""w": ["0", "0", "1", "2"]"#)
        .replace(r#""with_boundary": false"#, r#""with_boundary": true"#);
    let out = run(&["compute", &write_config(dir.path(), "b.json", &body)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: JobOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.matches);
    assert!(report.boundary.canonical.contains("π"));
    assert!(report.identities.iter().any(|r| r.id.label() == "T4.13" && r.matches));
}

#[test]
fn compute_output_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "job.json", TORSION_VECTOR_4);
    let first = stdout(&run(&["compute", &path]));
    let second = stdout(&run(&["compute", &path]));
    assert_eq!(first, second);
    let parsed: JobOutput = serde_json::from_str(&first).unwrap();
    assert_eq!(format!("{}\n", parsed.to_json()), first);
}

#[test]
fn compute_rejects_zero_denominator() {
    let dir = tempfile::tempdir().unwrap();
    let body = TORSION_VECTOR_4.replace(r#"[[1, 2, 3, "1"]]"#, r#"[[1, 2, 3, "1/0"]]"#);
    let out = run(&["compute", &write_config(dir.path(), "bad.json", &body)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 7"), "{}", stderr(&out));
}

#[test]
fn compute_rejects_malformed_json_and_unknown_case() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["compute", &write_config(dir.path(), "a.json", "{\n  \"dimension\": 4,\n")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: line"));

    let body = TORSION_VECTOR_4.replace("torsion_vector", "spin");
    let out = run(&["compute", &write_config(dir.path(), "b.json", &body)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    let body = TORSION_VECTOR_4.replace(r#"  "T": [[1, 2, 3, "1"]],"#, "");
    let out = run(&["compute", &write_config(dir.path(), "c.json", &body)]);
    assert_eq!(out.status.code(), Some(2));

    let body = TORSION_VECTOR_4.replace("[[1, 2, 3,", "[[2, 1, 3,");
    let out = run(&["compute", &write_config(dir.path(), "d.json", &body)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_reports_dimension_inconsistency() {
    let dir = tempfile::tempdir().unwrap();
    let body = TORSION_VECTOR_4.replace(r#""dimension": 4"#, r#""dimension": 6"#);
    let out = run(&["compute", &write_config(dir.path(), "a.json", &body)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let body = TORSION_VECTOR_4.replace(r#""dimension": 4"#, r#""dimension": 5"#);
    let out = run(&["compute", &write_config(dir.path(), "b.json", &body)]);
    assert_eq!(out.status.code(), Some(3));

    let body = TORSION_VECTOR_4.replace("[[1, 2, 3,", "[[1, 2, 7,");
    let out = run(&["compute", &write_config(dir.path(), "c.json", &body)]);
    assert_eq!(out.status.code(), Some(3));

    let body = TORSION_VECTOR_4.replace(r#""Y": "#, r#""X": "#);
    let out = run(&["compute", &write_config(dir.path(), "d.json", &body)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_six_passes_and_reports_intermediate_mismatch() {
    let out = run(&["verify", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    let e420 = text.lines().find(|l| l.starts_with("E4.20")).unwrap();
    assert!(e420.contains(" no "), "{e420}");
    assert!(e420.contains("-5·vol(S^5)"), "{e420}");
}

#[test]
fn verify_four_fails_on_the_four_dimensional_torsion_grading_theorem() {
    let out = run(&["verify", "4", "6", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let runs: Vec<VerifyRun> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(runs.len(), 2);
    let four = &runs[0];
    assert!(!four.finals_match);
    let failing: Vec<_> = four.rows.iter().filter(|r| r.id.is_final() && !r.matches).map(|r| r.id.label()).collect();
    assert_eq!(failing, ["T4.11n4", "T4.11n6"]);
    let e420 = four.rows.iter().find(|r| r.id.label() == "E4.20").unwrap();
    assert_eq!(e420.computed.canonical, "-1/2·vol(S^3)");
    assert_eq!(e420.paper.canonical, "-5·vol(S^3)");
    assert!(runs[1].finals_match);
}

#[test]
fn verify_seed_controls_inputs() {
    let a = bin().args(["verify", "4", "--json"]).env("SPECTRAL_TORSION_SEED", "11").output().unwrap();
    let b = bin().args(["verify", "4", "--json"]).env("SPECTRAL_TORSION_SEED", "11").output().unwrap();
    let c = bin().args(["verify", "4", "--json"]).env("SPECTRAL_TORSION_SEED", "12").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let bad = bin().args(["verify", "4"]).env("SPECTRAL_TORSION_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_rejects_bad_dimensions() {
    assert_eq!(run(&["verify", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "18"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "four"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn trace_examples() {
    let out = run(&["trace", "--dim", "4", "e1", "e2", "e3", "e4"]);
    assert_eq!(stdout(&out), "trace: 0\nsupertrace: -4\n");
    let out = run(&["trace", "--dim", "4"]);
    assert_eq!(stdout(&out), "trace: 4\nsupertrace: 0\n");
    let out = run(&["trace", "--dim", "6", "e1", "e1"]);
    assert!(stdout(&out).starts_with("trace: -8\n"));
    let out = run(&["trace", "--dim", "4", "gamma", "gamma"]);
    assert_eq!(stdout(&out), "trace: 4\nsupertrace: 0\n");
    assert_eq!(run(&["trace", "--dim", "4", "e5"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--dim", "4", "f1"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--dim", "3", "e1"]).status.code(), Some(2));
}

#[test]
fn moments_examples() {
    let out = run(&["moments", "--dim", "4", "--alpha", "2,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("moment: 1/4·vol(S^3)\n"));
    let out = run(&["moments", "--dim", "4", "--alpha", "1,1,0,0"]);
    assert!(stdout(&out).starts_with("moment: 0\n"));
    assert_eq!(run(&["moments", "--dim", "4", "--alpha", "2,0"]).status.code(), Some(2));
    assert_eq!(run(&["moments", "--dim", "4", "--alpha", "a,0,0,0"]).status.code(), Some(2));
}
