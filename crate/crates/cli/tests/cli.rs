use std::process::{Command, Output};

use serde_json::Value;

fn knotalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotalg"))
        .args(args)
        .env_remove("KNOTALG_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = knotalg(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn chord_dimensions() {
    let o = knotalg(&["chord-dims", "--max-k", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(": 1,0,1,1,3\n"), "{}", stdout(&o));
    let v = json(&["chord-dims", "--max-k", "4"]);
    assert_eq!(v["results"]["dims"], serde_json::json!([1, 0, 1, 1, 3]));
}

#[test]
fn slice_reports_rank_two_in_degree_seven() {
    let v = json(&[
        "slice",
        "--operad",
        "pois",
        "--n",
        "5",
        "--total-degree",
        "7",
    ]);
    assert_eq!(v["command"], "slice");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["n"], serde_json::json!([5]));
    let r = &v["results"][0];
    assert_eq!(r["total_rank"], 2);
    assert_eq!(r["entries"][0]["bidegree"], "(-5,12)");
    assert_eq!(r["entries"][0]["rank"], 2);
}

#[test]
fn trivial_corner_and_named_groups() {
    let v = json(&["homology", "--n", "5", "--bidegree", "-0,0"]);
    assert_eq!(v["results"][0]["rank"], 1);
    assert_eq!(v["results"][0]["representatives"][0], "e");
    let v = json(&["homology", "--n", "5", "--n", "6", "--bidegree", "-4,8"]);
    assert_eq!(v["results"][0]["rank"], 2);
    // internal degree 8 is not a multiple of 5
    assert_eq!(v["results"][1]["rank"], 0);
}

#[test]
fn classes_and_table() {
    let v = json(&["classes", "--n", "5"]);
    let names: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["class"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["iota", "iota^2", "v2"]);
    assert_eq!(v["results"][0]["representative"], "[x1,x2]");
    let v = json(&["table", "--n", "5"]);
    let rows = v["results"][0]["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["total_degree"] == 7));
}

#[test]
fn bracket_and_cup() {
    let v = json(&["bracket", "--n", "5", "--x", "[x1,x2]", "--y", "[x1,x2]"]);
    let r = &v["results"][0];
    assert_eq!(r["bidegree"], "(-3,8)");
    assert_eq!(r["cycle"], true);
    assert_eq!(r["class"], serde_json::json!(["-2"]));
    let v = json(&["cup", "--n", "6", "--x", "[x1,x2]", "--y", "[x1,x2]"]);
    assert_eq!(v["results"][0]["bidegree"], "(-4,10)");
}

#[test]
fn csv_and_text_formats() {
    let o = knotalg(&["basis", "--n", "5", "--bidegree", "-3,8", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("operad,bidegree,index,monomial"));
    assert_eq!(lines.count(), 2);
    let o = knotalg(&["basis", "--operad", "assoc"]);
    assert!(stdout(&o).contains("assoc"));
}

#[test]
fn output_is_deterministic_with_a_warm_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["homology", "--n", "6", "--cache-dir", d, "--format", "json"];
    let cold = knotalg(&args);
    let warm = knotalg(&args);
    assert!(cold.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let uncached = knotalg(&["homology", "--n", "6", "--format", "json"]);
    assert_eq!(cold.stdout, uncached.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_knotalg"))
        .args(["homology", "--n", "6", "--format", "json"])
        .env("KNOTALG_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(cold.stdout, env.stdout);
}

#[test]
fn prime_fields_agree_on_ranks() {
    let q = json(&["homology", "--n", "5"]);
    let p = json(&["homology", "--n", "5", "--field", "p32003"]);
    assert_eq!(q["results"], p["results"]);
}

#[test]
fn exit_codes() {
    assert_eq!(knotalg(&["slice"]).status.code(), Some(2));
    assert_eq!(knotalg(&["basis", "--field", "r"]).status.code(), Some(2));
    assert_eq!(
        knotalg(&["bracket", "--x", "[x1", "--y", "x1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        knotalg(&["basis", "--bidegree", "-4"]).status.code(),
        Some(2)
    );
    let o = knotalg(&["slice", "--n", "5", "--total-degree", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-arity"));
    assert_eq!(
        knotalg(&["chord-dims", "--max-k", "9"]).status.code(),
        Some(3)
    );
    assert_eq!(
        knotalg(&["classes", "--operad", "assoc"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_exit_status_follows_the_checks() {
    let o = knotalg(&["verify", "knot", "--n", "5", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("6 checks, 0 failed"));
    // the chart sign check reports a mismatch with the printed closed form
    let o = knotalg(&["verify", "signs", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["passed"], false);
}
