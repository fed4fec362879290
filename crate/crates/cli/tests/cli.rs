use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jssp-aco"))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("JSSP_ACO_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn toy(dir: &Path) -> String {
    let path = dir.join("toy.txt");
    std::fs::write(&path, "2 2\n0 3 1 2\n1 2 0 4\n").unwrap();
    path.display().to_string()
}

#[test]
fn solve_toy_finds_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", &toy(dir.path()), "--iterations", "100"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("best makespan: 7"), "{text}");
    assert!(text.contains("optimum: unknown"));
}

#[test]
fn solve_ft06_reports_gap() {
    let ft06 = root().join("data/instances/ft06.txt");
    let out = run(&[
        "solve",
        ft06.to_str().unwrap(),
        "--iterations",
        "1000",
        "--elitism",
        "--alpha",
        "1",
        "--beta",
        "2",
        "--evap",
        "0.01",
        "--init",
        "2",
        "--inc",
        "1",
        "--seed",
        "7",
        "--gantt",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let best: u32 = text
        .lines()
        .find_map(|l| l.strip_prefix("best makespan: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(best >= 55);
    assert!(text.contains("optimum: 55 (gap "));
    assert!(text.contains("elitism=global-best reinforcement (weight 1)"));
    assert_eq!(text.lines().filter(|l| l.starts_with('M')).count(), 6);
}

#[test]
fn solve_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let ft06 = root().join("data/instances/ft06.txt");
    let args = ["solve", ft06.to_str().unwrap(), "--iterations", "50", "--ants", "10", "--seed", "3", "--gantt"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let trace = dir.path().join("trace.csv");
    let out = run(&[&args[..], &["--trace", trace.to_str().unwrap()]].concat());
    assert!(out.status.success());
    let trace = std::fs::read_to_string(trace).unwrap();
    assert_eq!(trace.lines().count(), 51);
}

#[test]
fn invalid_flags_are_user_errors() {
    let dir = tempfile::tempdir().unwrap();
    let toy = toy(dir.path());
    let out = run(&["solve", &toy, "--iterations", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("iterations"));

    let out = run(&["solve", &toy, "--evap", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["solve", &toy, "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Usage"));

    let out = run(&["solve", "/nonexistent/instance.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validate_round_trip_and_violations() {
    let dir = tempfile::tempdir().unwrap();
    let toy = toy(dir.path());
    let json = dir.path().join("best.json");
    let out = run(&["solve", &toy, "--iterations", "20", "--json", json.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["validate", &toy, json.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "valid, makespan=7");

    // J0.0 [0,3) and J1.1 [2,6) share machine 0
    let overlap = r#"{"instance":"toy","operations":[
        {"job":0,"step":0,"machine":0,"start":0,"duration":3},
        {"job":0,"step":1,"machine":1,"start":3,"duration":2},
        {"job":1,"step":0,"machine":1,"start":0,"duration":2},
        {"job":1,"step":1,"machine":0,"start":2,"duration":4}]}"#;
    let bad = dir.path().join("overlap.json");
    std::fs::write(&bad, overlap).unwrap();
    let out = run(&["validate", &toy, bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("machine-exclusivity"), "{}", stderr(&out));

    let missing = r#"{"instance":"toy","operations":[
        {"job":0,"step":0,"machine":0,"start":0,"duration":3},
        {"job":0,"step":1,"machine":1,"start":3,"duration":2},
        {"job":1,"step":0,"machine":1,"start":0,"duration":2}]}"#;
    std::fs::write(&bad, missing).unwrap();
    let out = run(&["validate", &toy, bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("covers 3 of 4"), "{}", stderr(&out));

    std::fs::write(&bad, "not json").unwrap();
    let out = run(&["validate", &toy, bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("malformed"));
}

#[test]
fn oracle_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["oracle", &toy(dir.path())]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("optimum: 7"));
    assert!(stdout(&out).contains("sequences decoded: 6"));

    let ft06 = root().join("data/instances/ft06.txt");
    let out = run(&["oracle", ft06.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("exceed the cap"));
}

#[test]
fn bench_without_configs_is_usage_error() {
    let out = run(&["bench"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Usage"));
}

#[test]
fn bench_tuned_preset_hits_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let preset = root().join("presets/table3_ft06.cfg");
    let out = run(&["bench", preset.to_str().unwrap(), "--out", csv.to_str().unwrap(), "--workers", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(csv).unwrap();
    let header: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let col = |name: &str| row[header.iter().position(|&h| h == name).unwrap()];
    assert_eq!(col("instance"), "ft06");
    assert_eq!(col("optimum"), "55");
    assert_eq!(col("minimum"), "55");
    assert!(stdout(&out).contains("tuned ft06"));
}

#[test]
fn bench_keeps_going_after_failures() {
    let dir = tempfile::tempdir().unwrap();
    // the evap. C row with a smaller budget
    let preset = std::fs::read_to_string(root().join("presets/table2_evapC.cfg")).unwrap();
    let ft06 = root().join("data/instances/ft06.txt");
    let small = preset
        .lines()
        .map(|l| match l.split_once('=').map(|(k, _)| k.trim()) {
            Some("instance") => format!("instance = {}", ft06.display()),
            Some("ite") => "ite = 20".to_string(),
            Some("ants") => "ants = 10".to_string(),
            Some("exec") => "exec = 3".to_string(),
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let good = dir.path().join("evapC.cfg");
    std::fs::write(&good, small).unwrap();
    let broken = dir.path().join("broken.cfg");
    std::fs::write(&broken, "ite = 5\n").unwrap();

    let csv = dir.path().join("out.csv");
    let out = run(&["bench", good.to_str().unwrap(), broken.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().nth(2).unwrap().starts_with("evap. C,ft06,55,"));
    assert!(text.lines().nth(3).unwrap().ends_with("missing `instance` key"));

    let out = run(&["bench", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
