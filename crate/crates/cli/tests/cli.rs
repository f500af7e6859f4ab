use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_freealg"))
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn certify_s_t() {
    let o = run(&["certify", "--elements", "S,T", "--model", "weyl", "--kind", "free-group", "--max-len", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "CERTIFIED");
    assert_eq!(v["rank"], 53);
    assert_eq!(v["word_count"], 53);
    assert_eq!(v["window_low"], -16);
    assert_eq!(v["config"]["elements"][1], "T");
}

#[test]
fn certify_monoid_and_solvable() {
    let o = run(&["certify", "--elements", "S1,T1", "--model", "weyl", "--kind", "free-monoid", "--max-len", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "certify",
        "--elements",
        "s2dim,conj2dim",
        "--model",
        "solvable",
        "--kind",
        "free-group",
        "--max-len",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 17);
}

#[test]
fn certify_exit_codes() {
    let o = run(&["certify", "--elements", "cauchon_s,cauchon_s", "--max-len", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"][1], "1/1");
    let o = run(&["certify", "--elements", "cauchon_u,cauchon_u", "--kind", "free-monoid", "--max-len", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o =
        run(&["certify", "--elements", "g+g^-1,h+h^-1", "--model", "fga", "--kind", "free-monoid", "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["certify", "--elements", "nope,S"]).status.code(), Some(1));
    assert_eq!(run(&["certify", "--no-such-flag"]).status.code(), Some(1));
}

#[test]
fn certify_writes_output_file() {
    let path = std::env::temp_dir().join(format!("freealg-report-{}.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let o = run(&["certify", "--elements", "S2^2,T3^2", "--kind", "free-monoid", "--max-len", "2", "--output", &p]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rank"], 7);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn involution_commands() {
    let m = fixture("m.json");
    let o = run(&["involution", "classify", "--matrix-file", &m]);
    assert_eq!(stdout(&o).lines().next(), Some("i"));
    let o = run(&["involution", "transform", "--matrix-file", &m]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["canonical"], "eta1");
    let o = run(&["involution", "symmetric", "--element", "S1", "--canonical", "eta3"]);
    assert_eq!(stdout(&o).lines().next(), Some("true"));
    let o = run(&["involution", "symmetric", "--element", "S", "--canonical", "eta3"]);
    assert_eq!(stdout(&o).lines().next(), Some("false"));
    assert_eq!(run(&["involution", "check", "--canonical", "eta1"]).status.code(), Some(0));
}

#[test]
fn lie_commands() {
    let o = run(&["lie", "find-heisenberg", "--algebra", &fixture("free-nil-c3-g2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("case: x*=-x, y*=-y"));
    let o = run(&["lie", "series", "--algebra", &fixture("free-nil-c3-g2.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lower_central_dims"], serde_json::json!([5, 3, 2, 0]));
    let o = run(&["lie", "validate", "--algebra", &fixture("H-eta1.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["lie", "generate", "--generators", "3", "--class", "2"]);
    let generated: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let stored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("free-nil-c2-g3.json")).unwrap()).unwrap();
    assert_eq!(generated, stored);
}

#[test]
fn group_and_valuation_commands() {
    let o = run(&["group", "valuation", "--element", "S2_grp", "--nseries", "series1"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = run(&["group", "valuation", "--element", "S2_grp", "--nseries", "series1", "--times-star", "main1"]);
    assert_eq!(stdout(&o).trim(), "8");
    let o = run(&["valuation", "degree", "--element", "S1", "--grading", "a"]);
    assert_eq!(stdout(&o).lines().next(), Some("4"));
    let o = run(&["valuation", "degree", "--element", "T2", "--grading", "b"]);
    assert_eq!(stdout(&o).lines().next(), Some("6"));
}

#[test]
fn certify_in_iterated_series() {
    let o = run(&["certify", "--elements", "S,T", "--model", "iter", "--max-len", "2", "--caps", "8,16,16"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["rank"].as_u64(), v["window_high"].as_i64()), (Some(17), Some(8)));
    assert!(v["config"]["window"].is_null());
    let o =
        run(&["certify", "--elements", "S,T", "--model", "iter", "--max-len", "2", "--caps", "2,2,2", "--no-retry"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["certify", "--elements", "S,T", "--model", "iter", "--caps", "4,8"]).status.code(), Some(1));
}
