use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cis1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cis1")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("one JSON document")
}

const CASE1: &str = r#"{
  "ambient": {"t": 1, "rho": -1, "euler": 2, "sign": 0},
  "template": "two_fours",
  "flags": {"effectiveness": true, "convention35": true, "lemma64": true},
  "components": [
    {"kind": "four", "weight": 1, "a": 0, "ev_x2": 0, "ev_xy": 0, "ev_y2": 0, "ev_p1": 0, "b2": 0, "sign": 0, "chi": 2},
    {"kind": "four", "weight": 2, "a": 3, "ev_x2": 0, "ev_xy": 0, "ev_y2": 0, "ev_p1": 0, "b2": 0, "sign": 0, "chi": 0}
  ]
}"#;

// X = (1,1) surface with a = 1, Y with a = 0; t = a^2 x = 1 and rho = 4.
const WITNESS: &str = r#"{
  "ambient": {"t": 1, "rho": 4, "euler": 2, "sign": 0},
  "template": "two_surfaces",
  "flags": {"effectiveness": true, "convention35": true, "lemma64": true},
  "components": [
    {"kind": "surface", "weights": [1, 1], "a": 1, "ev_x": 1, "ev_y1": 2, "ev_y2": 0, "chi": 2},
    {"kind": "surface", "weights": [1, 1], "a": 0, "ev_x": 1, "ev_y1": -2, "ev_y2": 0, "chi": 0}
  ]
}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn invariants_of_the_quartic_threefold() {
    let o = cis1(&["--json", "invariants", "3", "4"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["t"], 4);
    assert_eq!(v["c1"], 1);
    assert_eq!(v["rho"], -11);
    assert_eq!(v["chi"], -56);
    assert_eq!(v["b3"], 60);
    assert!(v["citations"]["chi"].is_string());

    let table = stdout(&cis1(&["invariants", "3", "4"]));
    assert!(table.lines().any(|l| l.split_whitespace().take(2).eq(["chi", "-56"])));
}

#[test]
fn invariants_of_projective_three_space() {
    let v = json(&cis1(&["invariants", "3", "1", "--json"]));
    assert_eq!(v["chi"], 4);
    assert_eq!(v["b3"], 0);
}

#[test]
fn invariants_of_the_quartic_surface() {
    let v = json(&cis1(&["invariants", "2", "4", "--json"]));
    assert_eq!(v["a_hat"], "2");
    assert_eq!(v["signature"], -16);
    assert_eq!(v["chi"], 24);
    assert_eq!(v["spin"], true);
}

#[test]
fn classify_examples() {
    let o = cis1(&["classify", "3", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("does NOT admit"));

    let v = json(&cis1(&["--json", "classify", "3", "3"]));
    assert_eq!(v["admits"], false);
    assert!(v["citation"].as_str().unwrap().contains("quadric"));

    assert_eq!(json(&cis1(&["--json", "classify", "2", "2", "2"]))["admits"], true);

    let v = json(&cis1(&["--json", "classify", "4", "2"]));
    assert_eq!(v["admits"], Value::Null);
    assert_eq!(v["reason"], "out_of_scope");
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["invariants", "3"][..],
        &["invariants", "0", "2"],
        &["invariants", "7", "2"],
        &["invariants", "3", "0"],
        &["invariants", "3", "-2"],
        &["invariants", "3", "2000000"],
        &["classify", "3", "x"],
        &["table", "3", "0"],
        &["bogus"],
        &["search", "no_such_template"],
        &["search", "two_surfaces", "--t-min", "0"],
        &["search", "two_surfaces", "--bound-weight", "0"],
        &["--workers", "0", "search", "two_surfaces"],
        &["verify", "/nonexistent/config.json"],
    ] {
        let o = cis1(args);
        assert_eq!(code(&o), 64, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(code(&cis1(&["--help"])), 0);
}

#[test]
fn json_errors_are_documents() {
    let o = cis1(&["--json", "invariants", "3", "0"]);
    assert_eq!(code(&o), 64);
    assert_eq!(json(&o)["error"]["kind"], "usage");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let o = cis1(&["--json", "verify", &write(dir.path(), "case1.json", CASE1)]);
    assert_eq!(code(&o), 2);
    let v = json(&o);
    assert_eq!(v["consistent"], false);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert_eq!(failed[0]["name"], "x3-localization");
    assert!(failed[0]["citation"].as_str().unwrap().contains("two 4-dimensional components"));

    let o = cis1(&["verify", &write(dir.path(), "witness.json", WITNESS)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let float = WITNESS.replace("[1, 1], \"a\": 0", "[1.0, 1], \"a\": 0");
    let o = cis1(&["--json", "verify", &write(dir.path(), "float.json", &float)]);
    assert_eq!(code(&o), 65);
    assert_eq!(json(&o)["error"]["path"], "components[1].weights[0]");
    assert!(String::from_utf8_lossy(&o.stderr).contains("components[1].weights[0]"));

    let extra = WITNESS.replace("\"sign\": 0}", "\"sign\": 0, \"genus\": 1}");
    let o = cis1(&["verify", &write(dir.path(), "extra.json", &extra)]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("ambient"));
}

#[test]
fn verify_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [("case1.json", CASE1), ("witness.json", WITNESS)] {
        let first = cis1(&["--json", "verify", &write(dir.path(), name, text)]);
        let doc = json(&first);
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(again, stdout(&first));

        // the echoed configuration is itself a valid input producing identical output
        let echoed = serde_json::to_string_pretty(&doc["configuration"]).unwrap();
        let second = cis1(&["--json", "verify", &write(dir.path(), "echo.json", &echoed)]);
        assert_eq!(stdout(&second), stdout(&first));
        assert_eq!(code(&second), code(&first));
    }
}

const SEMIFREE: &[&str] = &[
    "search",
    "two_surfaces",
    "--semifree",
    "--rho-min",
    "-10",
    "--t-min",
    "1",
    "--t-max",
    "10",
    "--bound-weight",
    "1",
    "--bound-a",
    "5",
    "--bound-eval",
    "10",
];

fn semifree(rho_max: &str, extra: &[&str]) -> Output {
    let mut args = vec!["--json"];
    args.extend_from_slice(extra);
    args.extend_from_slice(SEMIFREE);
    args.extend_from_slice(&["--rho-max", rho_max]);
    cis1(&args)
}

#[test]
fn semifree_search_has_no_hits_for_nonpositive_rho() {
    let o = semifree("0", &[]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["count"], 0);
    assert!(v["nodes"].as_u64().unwrap() > 0);
}

#[test]
fn semifree_search_hits_rho_one_and_four() {
    let o = semifree("10", &[]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let hits = v["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    assert_eq!(v["count"], hits.len());
    let mut rhos: Vec<i64> = hits.iter().map(|h| h["ambient"]["rho"].as_i64().unwrap()).collect();
    rhos.sort();
    rhos.dedup();
    assert_eq!(rhos, [1, 4]);

    // search output round-trips, and every hit verifies
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    for (i, h) in hits.iter().enumerate() {
        let path = write(dir.path(), &format!("hit{i}.json"), &h.to_string());
        assert_eq!(code(&cis1(&["verify", &path])), 0);
    }

    let parallel = semifree("10", &["--workers", "4"]);
    assert_eq!(stdout(&parallel), stdout(&o));
}

#[test]
fn budget_exceeded_exits_66() {
    let o = semifree("10", &["--budget", "10"]);
    assert_eq!(code(&o), 66);
    assert_eq!(json(&o)["error"]["kind"], "budget");
}

#[test]
fn four_with_two_points_has_no_hits() {
    let o = cis1(&[
        "--json",
        "search",
        "four_plus_two_points",
        "--rho-min",
        "-5",
        "--rho-max",
        "5",
        "--t-min",
        "1",
        "--t-max",
        "5",
        "--bound-weight",
        "3",
        "--bound-a",
        "3",
        "--bound-eval",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["count"], 0);
}

#[test]
fn table_is_stable_across_runs_and_workers() {
    let a = cis1(&["table", "3", "14"]);
    assert_eq!(code(&a), 0);
    for extra in [&["--workers", "1"][..], &["--workers", "8"]] {
        let mut args = extra.to_vec();
        args.extend_from_slice(&["table", "3", "14"]);
        assert_eq!(cis1(&args).stdout, a.stdout);
    }
    let v = json(&cis1(&["--json", "table", "3", "14"]));
    let rows = v["rows"].as_array().unwrap();
    let admitted: Vec<&Value> = rows.iter().filter(|r| r["admits"] == true).map(|r| &r["degrees"]).collect();
    assert_eq!(admitted, [&serde_json::json!([1]), &serde_json::json!([2])]);
}
