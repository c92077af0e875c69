//! End-to-end runs of the `apsn` binary. Every JSON report is validated
//! against its shipped schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(format!("{name}.json"))
}

fn apsn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apsn")).args(args).output().expect("binary runs")
}

fn validate(schema: &str, doc: &Value) {
    let text = std::fs::read_to_string(schema_path(schema)).unwrap();
    let schema_json: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema_json).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{schema} schema rejects output: {msgs:?}\n{doc:#}");
}

/// Runs a command expected to succeed and validates its JSON report.
fn ok(schema: &str, args: &[&str]) -> Value {
    let out = apsn(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    validate(schema, &doc);
    doc
}

/// Runs a command expected to fail with a domain error and returns its code.
fn domain_error(args: &[&str]) -> String {
    let out = apsn(args);
    assert_eq!(out.status.code(), Some(1), "{args:?}");
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    validate("error", &doc);
    doc["error"]["code"].as_str().unwrap().to_string()
}

fn graph6_list(doc: &Value) -> Vec<String> {
    doc["apsn"].as_array().unwrap().iter().map(|c| c["graph6"].as_str().unwrap().to_string()).collect()
}

#[test]
fn ten_vertex_betweenness_graph_is_stable() {
    let doc = ok("check", &["check", "--graph", &fixture("fig3.edges"), "--profile", &fixture("betweenness_all.json")]);
    assert_eq!(doc["stable"], true);
    assert_eq!(doc["verdict"], "stable");
}

#[test]
fn decay_census_is_complete_graph() {
    let doc = ok("census", &["census", "--n", "5", "--profile", &fixture("decay_half.json")]);
    assert_eq!(graph6_list(&doc), vec!["D~{".to_string()]);
    assert_eq!(doc["counts"]["scanned"], 1024);
}

#[test]
fn closeness_axiom_two_holds() {
    let doc = ok("axiom", &["axiom", "--measure", "closeness", "--axiom", "2", "--max-n", "5"]);
    assert!(doc["counterexample"].is_null());
}

#[test]
fn centrality_values() {
    let doc = ok("centrality", &["centrality", "--graph", &fixture("p4.edges"), "--measure", "closeness"]);
    assert_eq!(doc["values"][0]["exact"], "1/6");
    let one = ok("centrality", &["centrality", "--graph", &fixture("k5.g6"), "--measure", "eigenvector", "--vertex", "3"]);
    assert_eq!(one["vertices"], serde_json::json!([3]));
    assert!(one["values"][0]["approx"].as_f64().unwrap() > 0.4);
}

#[test]
fn check_with_cost() {
    let doc = ok(
        "check",
        &["check", "--graph", &fixture("p4.edges"), "--profile", &fixture("degree_all.json"), "--cost", "1/10"],
    );
    assert_eq!(doc["stable"], false);
    assert_eq!(doc["finite_cost"]["stable"], false);
    assert_eq!(domain_error(&["check", "--graph", &fixture("p4.edges"), "--profile", &fixture("degree_all.json"), "--cost=0"]), "invalid_parameter");
}

#[test]
fn census_checkpoint_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.jsonl");
    let g6 = dir.path().join("apsn.g6");
    let ck_s = ck.display().to_string();
    let first = ok(
        "census",
        &[
            "census", "--n", "4", "--profile", &fixture("degree_all.json"), "--shards", "3", "--checkpoint", &ck_s,
            "--graph6-out", &g6.display().to_string(),
        ],
    );
    assert_eq!(std::fs::read_to_string(&ck).unwrap().lines().count(), 3);
    assert_eq!(std::fs::read_to_string(&g6).unwrap().trim(), "C~");
    let resumed =
        ok("census", &["census", "--n", "4", "--profile", &fixture("degree_all.json"), "--shards", "3", "--resume", &ck_s]);
    assert_eq!(resumed["resumed_shards"], 3);
    assert_eq!(resumed["apsn"], first["apsn"]);
    assert_eq!(resumed["counts"], first["counts"]);
}

#[test]
fn census_conjecture_mode() {
    let doc = ok("conjecture", &["census", "--n", "4", "--conjecture", "eigenvector", "--jobs", "2"]);
    assert_eq!(doc["consistent"], true);
    assert_eq!(domain_error(&["census", "--n", "4", "--conjecture", "degree"]), "unknown_measure");
}

#[test]
fn predict_families() {
    let b = ok("predict", &["predict", "--family", "betweenness", "--n", "5", "--verify"]);
    assert_eq!(b["verification"]["equal"], true);
    let m = ok("predict", &["predict", "--family", "monotone", "--n", "4", "--types", "1,2,2,2p", "--verify"]);
    assert_eq!(m["verification"]["equal"], true);
    let s = ok("predict", &["predict", "--family", "stratified", "--n", "5", "--homophily", "gt"]);
    assert!(s["predicted"].as_array().unwrap().contains(&Value::from("D~{")));
    let table = ok("predict", &["predict", "--family", "stratified", "--n", "5", "--homophily=-1,1,2,3,4"]);
    assert!(table["count"].as_u64().unwrap() >= s["count"].as_u64().unwrap());
    let e = ok("predict", &["predict", "--family", "eccentricity", "--n", "4", "--verify"]);
    assert_eq!(e["verification"]["consistent"], false);
    assert_eq!(domain_error(&["predict", "--family", "monotone", "--n", "4", "--types", "1,2"]), "invalid_types");
    assert_eq!(domain_error(&["predict", "--family", "betweenness", "--n", "9"]), "size_guard");
}

#[test]
fn predict_single_graph() {
    let doc = ok("predict", &["predict", "--graph", &fixture("fig4.edges")]);
    assert_eq!(doc["ecc_necessary"], true);
    assert!(doc["monotone"]["error"].is_object());
    let k5 = ok("predict", &["predict", "--graph", &fixture("k5.g6"), "--known", "0=1"]);
    assert_eq!(k5["monotone"]["candidates"][0], serde_json::json!(["1"]));
}

#[test]
fn truncated_actions() {
    let u = ok("truncated", &["truncated", "universality", "--graph", &fixture("p4.edges"), "--measure", "degree"]);
    assert_eq!(u["thresholds"], serde_json::json!(["1", "2", "2", "1"]));
    assert_eq!(u["stable"], true);
    let p = ok("truncated", &["truncated", "pareto", "--graph", &fixture("p4.edges"), "--profile", &fixture("degree_theta2.json")]);
    assert_eq!(p["pareto"], p["stable"]);
    let g = ok("truncated", &["truncated", "greedy", "--weights", &fixture("weights.txt"), "--thresholds", "3,3,3,3"]);
    assert_eq!(g["pareto"], true);
    let m = ok("truncated", &["truncated", "maximal", "--n", "4", "--measure", "degree", "--thresholds", "2"]);
    assert_eq!(m["stable"], true);
    let mb = ok(
        "truncated",
        &["truncated", "maximal", "--n", "4", "--measure", "degree", "--thresholds", "2", "--bounds", "2,2,2,2"],
    );
    assert_eq!(mb["graph6"], m["graph6"]);
    assert_eq!(domain_error(&["truncated", "greedy", "--weights", &fixture("weights.txt"), "--thresholds", "1,2"]), "invalid_parameter");
}

#[test]
fn learn_brackets_threshold() {
    let doc = ok("learn", &["learn", "--profile", &fixture("degree_theta2.json"), "--n", "4", "--agent", "0"]);
    let r = &doc["reports"][0];
    assert_eq!(r["interval"]["low"]["exact"], "1");
    assert_eq!(r["interval"]["high"]["exact"], "2");
    let all = ok("learn", &["learn", "--profile", &fixture("linear_theta3.json"), "--n", "4"]);
    assert_eq!(all["reports"].as_array().unwrap().len(), 4);
    assert_eq!(domain_error(&["learn", "--profile", &fixture("degree_all.json"), "--n", "4"]), "malformed_profile");
    assert_eq!(domain_error(&["learn", "--profile", &fixture("degree_theta2.json"), "--n", "7"]), "size_guard");
}

#[test]
fn dynamics_is_seeded() {
    let args = ["dynamics", "--n", "5", "--profile", &fixture("degree_all.json"), "--seed", "3", "--max-steps", "50"];
    let a = ok("dynamics", &args);
    let b = ok("dynamics", &args);
    assert_eq!(a, b);
    assert_eq!(a["converged"], true);
    assert_eq!(a["final_graph"], "D~{");
    let fb = ok(
        "dynamics",
        &["dynamics", "--graph", &fixture("p4.edges"), "--profile", &fixture("rules.json"), "--seed", "1", "--rule", "first-blocking"],
    );
    assert_eq!(fb["seed"], 1);
}

#[test]
fn export_dot_annotations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.dot");
    let r = apsn(&["export-dot", "--graph", &fixture("p4.edges"), "--measure", "betweenness", "--out", &out.display().to_string()]);
    assert_eq!(r.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("graph apsn {") && dot.contains("1 -- 2;") && dot.contains("betweenness=2"));
    let p = apsn(&["export-dot", "--graph", &fixture("p4.edges"), "--profile", &fixture("rules.json")]);
    assert!(String::from_utf8(p.stdout).unwrap().contains("rule=1"));
    let plain = apsn(&["export-dot", "--graph", &fixture("p4.edges")]);
    assert!(String::from_utf8(plain.stdout).unwrap().contains("0 [label=\"0\"]"));
}

#[test]
fn error_codes_are_distinct() {
    let g = fixture("p4.edges");
    let codes = [
        domain_error(&["centrality", "--graph", &g, "--measure", "nonsense"]),
        domain_error(&["check", "--graph", &g, "--profile", &fixture("weights.txt")]),
        domain_error(&["census", "--n", "9", "--profile", &fixture("degree_all.json")]),
        domain_error(&["axiom", "--measure", "degree", "--axiom", "7"]),
        domain_error(&["centrality", "--graph", &fixture("missing.edges"), "--measure", "degree"]),
    ];
    assert_eq!(codes, ["unknown_measure", "malformed_profile", "size_guard", "unknown_axiom", "io"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["dynamics", "--n", "4", "--profile", "x.json"],
        vec!["census", "--n", "4"],
        vec!["frobnicate"],
        vec!["census", "--n", "4", "--profile", "p.json", "--shards", "0"],
        vec!["census", "--n", "4", "--profile", "p.json", "--checkpoint", "a", "--resume", "b"],
    ] {
        assert_eq!(apsn(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn help_lists_every_flag() {
    let table: [(&str, &[&str]); 9] = [
        ("centrality", &["--graph", "--measure", "--vertex", "--out", "--jobs"]),
        ("check", &["--graph", "--profile", "--cost"]),
        ("census", &["--n", "--profile", "--conjecture", "--shards", "--checkpoint", "--resume", "--graph6-out"]),
        ("axiom", &["--measure", "--axiom", "--max-n"]),
        ("predict", &["--family", "--n", "--types", "--homophily", "--verify", "--graph", "--known"]),
        ("truncated", &["universality", "pareto", "greedy", "maximal"]),
        ("learn", &["--profile", "--n", "--agent"]),
        ("dynamics", &["--profile", "--graph", "--n", "--seed", "--max-steps", "--rule"]),
        ("export-dot", &["--graph", "--profile", "--measure"]),
    ];
    for (sub, flags) in table {
        let out = apsn(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0));
        let help = String::from_utf8(out.stdout).unwrap();
        for f in flags {
            assert!(help.contains(f), "{sub} --help lacks {f}");
        }
    }
    let top = String::from_utf8(apsn(&["--help"]).stdout).unwrap();
    for sub in ["centrality", "check", "census", "axiom", "predict", "truncated", "learn", "dynamics", "export-dot"] {
        assert!(top.contains(sub));
    }
    let greedy = String::from_utf8(apsn(&["truncated", "greedy", "--help"]).stdout).unwrap();
    assert!(greedy.contains("--weights") && greedy.contains("--thresholds"));
    let maximal = String::from_utf8(apsn(&["truncated", "maximal", "--help"]).stdout).unwrap();
    assert!(maximal.contains("--bounds"));
}
