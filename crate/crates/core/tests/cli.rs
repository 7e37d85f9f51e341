use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_fskan");

fn fskan(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().unwrap()
}

const QUICK: [&str; 6] = ["--pop", "6", "--iters", "5", "--steps", "200"];

fn quick<'a>(head: &[&'a str]) -> Vec<&'a str> {
    head.iter().copied().chain(QUICK).collect()
}

#[test]
fn solve_writes_the_default_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = fskan(dir.path(), &["solve", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("fs_b00.5_b0_jaya.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("eta,f,fp,fpp"));
    assert!(lines.next().unwrap().starts_with("0,0,0,0.332"));
    assert_eq!(text.lines().count(), 4002);
    assert!(!text.contains('\r'));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = quick(&["solve", "--beta0", "1", "--beta", "-0.15", "--optimizer", "ga", "--format", "json", "--seed", "9"]);
    assert_eq!(fskan(dir.path(), &args).status.code(), Some(0));
    let path = dir.path().join("fs_b01_b-0.15_ga.json");
    let first = fs::read(&path).unwrap();
    fs::remove_file(&path).unwrap();
    assert_eq!(fskan(dir.path(), &args).status.code(), Some(0));
    assert_eq!(first, fs::read(&path).unwrap());

    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["config"]["optimizer"], "ga");
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["params"]["beta"], -0.15);
}

#[test]
fn convergence_has_one_row_per_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let out = fskan(dir.path(), &["convergence", "--pop", "6", "--iters", "1", "--steps", "200", "--out", "h.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("h.csv")).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("iteration,best_fitness,alpha,eta_inf\n1,"));
}

#[test]
fn default_convergence_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = fskan(dir.path(), &["convergence"]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("fs_b00.5_b0_jaya_convergence.csv")).unwrap();
    let fit: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(fit.len(), 100);
    assert!(fit.windows(2).all(|w| w[1] <= w[0]));
    assert!(fit[99] <= 1e-6, "{}", fit[99]);
}

#[test]
fn stdout_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = fskan(dir.path(), &quick(&["solve", "--out", "-"]));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("eta,f,fp,fpp\n"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn matrix_lists_every_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = fskan(dir.path(), &quick(&["matrix", "--optimizer", "jaya,pso"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("fs_matrix.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "beta0,beta,algorithm,seed,alpha,eta_inf,residual,status");
    assert_eq!(lines.len(), 21);
    assert!(lines[1].starts_with("0.5,0,jaya,"));
    assert!(lines[2].starts_with("0.5,0,pso,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",ok")));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["solve", "--optimizer", "frobnicate"],
        vec!["solve", "--frobnicate"],
        vec!["solve", "--pop", "2"],
        vec!["solve", "--bounds", "0,3,1"],
        vec!["frobnicate"],
        vec![],
    ] {
        let out = fskan(dir.path(), &args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = fskan(dir.path(), &["solve", "--frobnicate"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--frobnicate"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn unwritable_output_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = fskan(dir.path(), &quick(&["solve", "--out", "missing/dir/x.csv"]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn regress_exit_code_tracks_the_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let out = fskan(dir.path(), &["regress", "--iters", "1", "--pop", "4", "--steps", "50"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
    assert!(text.trim_end().ends_with("records passed"));

    let out = fskan(dir.path(), &["regress", "--out", "report.txt"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(text.contains("jaya: 10/10 records passed"));
}

#[test]
fn help_and_version_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    for flag in ["--help", "--version"] {
        assert_eq!(fskan(dir.path(), &[flag]).status.code(), Some(0));
    }
}
