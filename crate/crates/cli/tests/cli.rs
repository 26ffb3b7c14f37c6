use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn biham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biham")).args(args).env_remove("BIHAM_THREADS").output().unwrap()
}

fn example(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name).display().to_string()
}

fn write_spec(dir: &TempDir, text: &str) -> String {
    let path: PathBuf = dir.path().join("problem.json");
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn isotropic_oscillator_has_identity_hamiltonian() {
    let out = biham(&["analyze-linear", "--spec", &example("isotropic_oscillator.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = stdout_json(&out);
    let h = &r["results"]["H"];
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert_eq!(h[i][j].as_f64().unwrap(), want);
        }
    }
    assert_eq!(r["verdicts"]["hamiltonian"], true);
    assert_eq!(r["passed"], true);
}

#[test]
fn gibbs_grid_centre_matches_sech() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("run");
    let out = biham(&[
        "wigner",
        "--spec",
        &example("gibbs_wigner.json"),
        "--out",
        out_dir.to_str().unwrap(),
        "--plot",
        "wigner",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // grid point N/2 is the origin; read it straight from the artifact
    let text = std::fs::read_to_string(out_dir.join("wigner_grid.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,p,re,im"));
    let centre = lines
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .find(|row| row[0] == 0.0 && row[1] == 0.0)
        .unwrap();
    let sech1 = 2.0 / (1f64.exp() + (-1f64).exp());
    assert!((centre[2] - sech1).abs() < 1e-10, "{}", centre[2]);
    assert!(out_dir.join("plot_wigner.csv").exists());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["artifacts"], serde_json::json!(["wigner_grid.csv", "plot_wigner.csv"]));
}

#[test]
fn non_skew_structure_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, r#"{"payload": {"G": [[0, 1], [-1, 0]], "omega": [[1, 0], [0, 1]]}}"#);
    let out = biham(&["analyze-linear", "--spec", &spec]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("skew"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "{\n  \"payload\": {\"G\": [[0, 1],\n [-1 0]]}\n}\n");
    let out = biham(&["analyze-linear", "--spec", &spec]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 3, column"), "{err}");
}

#[test]
fn unknown_plot_selector_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let out = biham(&[
        "compat",
        "--spec",
        &example("diagonal_pair.json"),
        "--out",
        dir.path().to_str().unwrap(),
        "--plot",
        "phase-portrait",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown plot"));
}

#[test]
fn plot_the_command_does_not_make_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let out = biham(&[
        "compat",
        "--spec",
        &example("diagonal_pair.json"),
        "--out",
        dir.path().to_str().unwrap(),
        "--plot",
        "wigner",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plot_without_output_directory_exits_with_two() {
    let out = biham(&["compat", "--spec", &example("diagonal_pair.json"), "--plot", "spectrum"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn same_seed_gives_identical_bytes() {
    let a = biham(&["gqm", "--spec", &example("gns_mixed_qubit.json"), "--seed", "3"]);
    let b = biham(&["gqm", "--spec", &example("gns_mixed_qubit.json"), "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["seed"], 3);
}

#[test]
fn thread_count_does_not_change_the_report() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_biham"))
            .args(["wigner", "--spec", &example("first_excited_state.json")])
            .env("BIHAM_THREADS", threads)
            .output()
            .unwrap()
    };
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn tight_tolerance_fails_with_one_and_still_reports() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        r#"{"tolerances": {"closed_form": 1e-30},
            "payload": {"n": 64, "l_q": 8, "beta": 1, "state": "gibbs"}}"#,
    );
    let out = biham(&["wigner", "--spec", &spec]);
    assert_eq!(out.status.code(), Some(1));
    let r = stdout_json(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(r["residuals"]["closed_form"]["pass"], false);
}

#[test]
fn unused_tolerance_is_a_spec_error() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, r#"{"tolerances": {"purity": 1e-3}, "payload": {"h1": [[1]], "h2": [[2]]}}"#);
    let out = biham(&["compat", "--spec", &spec]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("purity"));
}

#[test]
fn command_mismatch_is_a_spec_error() {
    let out = biham(&["triple", "--spec", &example("diagonal_pair.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn momentum_sign_flag_is_echoed() {
    let out = biham(&["wigner", "--spec", &example("first_excited_state.json"), "--momentum-sign", "standard"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout_json(&out)["results"]["momentum_sign"], "standard");
}

#[test]
fn csv_report_lists_residuals() {
    let out = biham(&["triple", "--spec", &example("darboux_triple.json"), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,name,value,tolerance,pass\n"));
    assert!(text.contains("residual,J_squared,"));
    assert!(text.trim_end().ends_with("summary,passed,true,,true"));
}

#[test]
fn every_example_passes() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let spec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let command = spec["command"].as_str().unwrap();
        let out = biham(&[command, "--spec", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}: {}", path.display(), stderr(&out));
        count += 1;
    }
    assert!(count >= 8);
}
