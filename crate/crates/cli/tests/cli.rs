//! Exit-code and flag behavior of the command-line interface.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_chronopack")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn pack_reports_feasible_and_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let feasible = write(dir.path(), "f.txt", "container 2 1 1\nitem a 1 1 1 1\n");
    let out = run(&["pack", &feasible]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("FEASIBLE"));
    assert!(stdout(&out).contains("place a 0 0 0 1"));

    let infeasible = write(dir.path(), "i.txt", "container 0.9 1 1\nitem a 1 1 1 5\n");
    let out = run(&["pack", &infeasible]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "INFEASIBLE\n");
    assert!(stderr(&out).contains("item `a` cannot fit"));
}

#[test]
fn malformed_input_is_exit_two_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "item a 1 1 1 5\n");
    let out = run(&["pack", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"));

    let out = run(&["schedule", "/nonexistent/file.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_and_subcommands_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).to_lowercase().contains("usage"));

    let out = run(&["pack", "--no-such-flag", "x.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schedule_rejects_unknown_orders() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", "container 1 1 1\nitem a 1 1 1 1\n");
    let out = run(&["schedule", &inst, "--order", "shuffled"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["schedule", &inst, "--order", "as-given"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("makespan 1\n"));
}

#[test]
fn drop_oversize_echoes_dropped_ids() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "i.txt",
        "container 1 1 1\nitem big 2 1 1 1\nitem a 1 1 1 1\n",
    );
    let out = run(&["schedule", &inst]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "INFEASIBLE\n");

    let out = run(&["schedule", &inst, "--drop-oversize"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("dropped oversize item big"));
    assert!(stdout(&out).contains("item a start 0 end 1"));
    assert!(!stdout(&out).contains("big"));
}

#[test]
fn validate_flags_tampering_with_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "i.txt",
        "container 2 1 1\nitem a 1 1 1 1\nitem b 1 1 1 2\n",
    );
    let out = run(&["schedule", &inst]);
    assert_eq!(out.status.code(), Some(0));
    let good = write(dir.path(), "s.txt", &stdout(&out));
    let out = run(&["validate", &inst, &good, "--ordered"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "OK\n");

    let tampered_text = stdout(&run(&["schedule", &inst]))
        .replace("beat 1 start 1 duration 1", "beat 1 start 3/2 duration 1");
    let tampered = write(dir.path(), "t.txt", &tampered_text);
    let out = run(&["validate", &inst, &tampered]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("beat-gap"));
}

#[test]
fn gen_writes_deterministic_files_and_rejects_degenerate_params() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        let out = run(&[
            "gen",
            "--seed",
            "11",
            "--items",
            "3",
            "--container",
            "3",
            "2",
            "2",
            "-o",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "same seed must generate identical files"
    );

    let out = run(&[
        "gen",
        "--seed",
        "1",
        "--items",
        "0",
        "--container",
        "2",
        "2",
        "2",
        "-o",
        dir.path().join("z.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_commands_mirror_the_solver_surfaces() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "i.txt",
        "container 2 1 1\nitem a 1 1 1 1\nitem b 1 1 1 1\nitem c 1 1 1 2\n",
    );
    let out = run(&["oracle", "pack", &inst]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "INFEASIBLE\n");

    let out = run(&["oracle", "schedule", &inst]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "makespan 2\n");

    let out = run(&["oracle", "schedule", &inst, "--ordered"]);
    assert_eq!(stdout(&out), "makespan 3\n");

    let fractional = write(dir.path(), "f.txt", "container 3/2 1 1\nitem a 1 1 1 1\n");
    let out = run(&["oracle", "pack", &fractional]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a positive integer"));
}

#[test]
fn solve_honors_the_guard_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "i.txt",
        "container 2 2 2\nitem a 1 1 1 1\nitem b 1 1 2 1\nitem c 2 1 1 1\n",
    );
    let out = Command::new(bin())
        .args(["solve", &inst])
        .env("CHRONOPACK_GUARD_N", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("guard"));

    let out = Command::new(bin())
        .args(["solve", &inst, "--force"])
        .env("CHRONOPACK_GUARD_N", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Command::new(bin())
        .args(["solve", &inst])
        .env("CHRONOPACK_GUARD_N", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_prints_stats_then_the_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "i.txt",
        "container 2 1 1\nitem a 1 1 1 1\nitem b 1 1 1 1\nitem c 1 1 1 2\n",
    );
    let out = run(&["solve", &inst, "--prune"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lower_bound 2"));
    assert!(lines.next().unwrap().starts_with("evaluated "));
    assert!(lines.next().unwrap().starts_with("pruned "));
    assert!(lines.next().unwrap().starts_with("makespan 2"));
}

#[test]
fn gantt_and_boxes_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", "container 1 1 1\nitem a 1 1 1 5\n");
    let gantt = dir.path().join("g.csv");
    let boxes = dir.path().join("b.csv");
    let out = run(&[
        "schedule",
        &inst,
        "--gantt",
        gantt.to_str().unwrap(),
        "--boxes",
        boxes.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&gantt).unwrap(),
        "id,start,end\na,0,5\n"
    );
    assert_eq!(
        std::fs::read_to_string(&boxes).unwrap(),
        "beat,id,x,y,z,ex,ey,ez\n0,a,0,0,0,1,1,1\n"
    );
}
