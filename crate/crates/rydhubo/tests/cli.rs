use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rydhubo")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compile_is_deterministic() {
    let fig1 = example("fig1.hubo");
    let a = run(&["compile", path(&fig1)]);
    let b = run(&["compile", path(&fig1)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let dot1 = run(&["compile", path(&fig1), "--out", "dot"]);
    let dot2 = run(&["compile", path(&fig1), "--out", "dot"]);
    assert_eq!(dot1.stdout, dot2.stdout);
    assert!(String::from_utf8_lossy(&dot1.stdout).starts_with("graph"));
}

#[test]
fn fact6_summary_lists_the_weights() {
    let out = run(&["compile", path(&example("fact6.hubo"))]);
    assert_eq!(code(&out), 0);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("weights 32/36/27/32/16/16/4"), "{summary}");
    assert!(summary.contains("constant shift -68"));
}

#[test]
fn verify_exit_codes() {
    let fig1 = example("fig1.hubo");
    assert_eq!(code(&run(&["verify", path(&fig1)])), 0);
    let broken = run(&["--json", "verify", path(&fig1), "--inject-fault", "drop-edge"]);
    assert_eq!(code(&broken), 1);
    let cert: serde_json::Value = serde_json::from_slice(&broken.stdout).unwrap();
    assert_eq!(cert["equivalent"], false);
    assert!(!cert["witnesses"].as_array().unwrap().is_empty());
    assert_eq!(
        code(&run(&["--mode", "duplication", "verify", path(&example("fact6.hubo"))])),
        0
    );
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.hubo");
    fs::write(&bad, "1.5 x\n").unwrap();
    let out = run(&["compile", path(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 1"));
    assert_eq!(code(&run(&["compile", path(&dir.path().join("missing.hubo"))])), 2);
    assert_eq!(code(&run(&["compile"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn enumeration_bound_exits_4() {
    let dir = TempDir::new().unwrap();
    let big = dir.path().join("big.hubo");
    let text: String = (0..30).map(|i| format!("+1 v{i} v{}\n", (i + 1) % 30)).collect();
    fs::write(&big, text).unwrap();
    assert_eq!(code(&run(&["verify", path(&big)])), 4);
}

#[test]
fn atom_cap_exits_5_without_partial_output() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.json");
    assert_eq!(code(&run(&["compile", path(&example("fig1.hubo")), "-o", path(&graph)])), 0);
    let csv = dir.path().join("out.csv");
    let out = run(&["simulate", path(&graph), "--atom-cap", "5", "-o", path(&csv)]);
    assert_eq!(code(&out), 5);
    assert!(!csv.exists());
    let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1, "{names:?}");
}

#[test]
fn output_file_is_written_atomically() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("g.json");
    fs::write(&target, "old").unwrap();
    let out = run(&["compile", path(&example("fig1.hubo")), "-o", path(&target)]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(json["atoms"].as_array().unwrap().len(), 10);
    assert!(String::from_utf8_lossy(&out.stdout).contains("10 atoms"));
    let nowhere = dir.path().join("no/such/dir/g.json");
    assert_eq!(code(&run(&["compile", path(&example("fig1.hubo")), "-o", path(&nowhere)])), 3);
}

#[test]
fn zero_drive_keeps_the_register_empty() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.json");
    run(&["compile", path(&example("fig1.hubo")), "-o", path(&graph)]);
    let schedule = dir.path().join("s.json");
    fs::write(&schedule, r#"{"T": 10, "omega": [[0, 0]], "delta": [[0, -3], [10, 3]]}"#).unwrap();
    let out = run(&["simulate", path(&graph), path(&schedule)]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<(String, f64)> = reader.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows, [("0000".to_string(), 1.0)]);
    let again = run(&["simulate", path(&graph), path(&schedule)]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn malformed_schedule_exits_2() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.json");
    run(&["compile", path(&example("fig1.hubo")), "-o", path(&graph)]);
    let schedule = dir.path().join("s.json");
    fs::write(&schedule, r#"{"T": 10, "omega": [[0, 0], [20, 1]], "delta": [[0, 0]]}"#).unwrap();
    assert_eq!(code(&run(&["simulate", path(&graph), path(&schedule)])), 2);
}

#[test]
fn expand_reports_the_bound() {
    let out = run(&["expand", "--kind", "pos", "--order", "5"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["equivalent"], true);
    assert!(report["aux_atoms"].as_u64().unwrap() <= 50);
    assert_eq!(
        code(&run(&["expand", "--kind", "neg", "--order", "4", "--max-clique", "1"])),
        3
    );
}

#[test]
fn estimate_emits_both_modes() {
    let out = run(&["estimate", "--n", "32,64", "--complete", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().collect::<Vec<_>>(),
        [
            "N,K,mode,atoms",
            "32,2,addressing,1024",
            "32,2,duplication,1024",
            "64,2,addressing,4096",
            "64,2,duplication,4096"
        ]
    );
    let fact6 = run(&["estimate", path(&example("fact6.hubo"))]);
    assert_eq!(code(&fact6), 0);
}
