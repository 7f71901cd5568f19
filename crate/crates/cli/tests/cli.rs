use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ultranorm"))
        .args(args)
        .env_remove("ULTRANORM_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn documented_examples() {
    assert_eq!(json(&["norm", "--group", "prufer:2", "--field", "Qp:2"])["norm"], "infinity");
    assert_eq!(json(&["norm", "--group", "psl_chain:q0=3,ell=3,a=odd", "--field", "Qp:2"])["norm"], 4);
    assert_eq!(json(&["topo", "--complex", "circle3", "--op", "volume", "--p", "5"])["volume"], 1);
}

#[test]
fn every_report_echoes_its_configuration() {
    let runs: [&[&str]; 6] = [
        &["field", "--field", "Fp_laurent:3"],
        &["norm", "--group", "S3", "--field", "Qp:3"],
        &["cohomology", "--group", "Z/2", "--char", "2"],
        &["qm", "--mode", "laurent", "--p", "2", "--N", "2"],
        &["topo", "--complex", "sphere2"],
        &["catalogue"],
    ];
    for args in runs {
        let v = json(args);
        assert!(v["config"].is_object(), "{args:?}");
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn field_and_norm_reports() {
    let f = json(&["field", "--field", "Fp_laurent:3"]);
    assert_eq!(f["trichotomy"], "CHAR_P(3)");
    let n = json(&["norm", "--group", "S3", "--field", "Qp:3"]);
    assert_eq!((n["norm"].clone(), n["certified"].clone()), (Value::from(3), Value::Bool(true)));
    let doc = r#"{"kind":"extension","kernel":{"kind":"cyclic","n":4},"quotient":{"kind":"symmetric","n":4}}"#;
    assert_eq!(json(&["norm", "--group", doc, "--field", "Qp:2"])["norm"], 32);
}

#[test]
fn cohomology_reports() {
    let v = json(&["cohomology", "--group", "Z/2", "--char", "2", "--degree", "1"]);
    assert_eq!(v["dim_cohomology"], 1);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 1);
    assert_eq!(json(&["cohomology", "--group", "S3", "--char", "0"])["dim_cohomology"], 0);
    let table = r#"{"elements":["e","a"],"table":[["e","a"],["a","e"]]}"#;
    assert_eq!(json(&["cohomology", "--group", table, "--char", "2"])["dim_cohomology"], 1);
    let h = json(&["cohomology", "--abelian", "2:4,3", "--field", "Fp_laurent:2"]);
    assert_eq!(h["h1b_dimension"], 3);
    assert_eq!(json(&["cohomology", "--abelian", "2:4,3", "--field", "Qp:2"])["h1b_dimension"], 2);
}

#[test]
fn budget_override_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ultranorm"))
        .args(["cohomology", "--group", "Z/3", "--degree", "2"])
        .env("ULTRANORM_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let ok = Command::new(env!("CARGO_BIN_EXE_ultranorm"))
        .args(["cohomology", "--group", "Z/3", "--degree", "2"])
        .env("ULTRANORM_BUDGET", "27")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["config"]["budget_source"], "env");
}

#[test]
fn quasimorphism_modes() {
    let s = json(&["qm", "--mode", "section", "--p", "3", "--digits", "2,1"]);
    assert_eq!(s["section"], "7/9");
    assert_eq!(s["projection_recovers_element"], true);
    let d = json(&["qm", "--mode", "defect", "--p", "2", "--N", "3"]);
    assert_eq!(d["defect"], 1);
    let l = json(&["qm", "--mode", "laurent", "--p", "2", "--N", "2"]);
    assert_eq!((l["defect"].clone(), l["pairs_checked"].clone()), (Value::from(0), Value::from(16)));
    let p = json(&["qm", "--mode", "product", "--p", "2", "--factors", "1,2"]);
    assert_eq!(p["elements"], 8);
    assert_eq!(p["verdicts"]["defect_at_most_component_max"], true);
    let table = r#"{"group":"Z/2","p":2,"values":["0","1/2"]}"#;
    let t = json(&["qm", "--mode", "defect", "--table", table]);
    assert_eq!(t["bound_attained_at"], serde_json::json!(["1", "1"]));
    assert_eq!(t["verdicts"]["projection_is_homomorphism"], true);
}

#[test]
fn topology_ops() {
    assert_eq!(json(&["topo", "--complex", "torus_cw"])["dims"], serde_json::json!([1, 2, 1]));
    let mv = json(&["topo", "--complex", "wedge2", "--op", "mv"]);
    assert_eq!(mv["exact"], true);
    assert_eq!(mv["dims_x"], serde_json::json!([1, 2]));
    let sd = json(&["topo", "--complex", "circle3", "--op", "subdiv"]);
    assert_eq!(sd["holds"], true);
    let a = r#"[["0","1"],["1","2"],["0","2"]]"#;
    let b = r#"[["0","3"],["3","4"],["0","4"]]"#;
    assert_eq!(json(&["topo", "--complex", "wedge2", "--op", "mv", "--a", a, "--b", b])["exact"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["norm", "--group", "{\"kind\": ", "--field", "Qp:2"]).status.code(), Some(2));
    assert_eq!(run(&["norm", "--group", "S3", "--field", "Qp:4"]).status.code(), Some(2));
    assert_eq!(run(&["norm", "--group", "S3", "--field", "Qp:3", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--group", "S4", "--degree", "3"]).status.code(), Some(3));
    assert_eq!(run(&["topo", "--complex", "wedge2", "--op", "volume"]).status.code(), Some(3));
    let big = r#"{"group":"Z/2","p":2,"values":["0","1/4"]}"#;
    assert_eq!(run(&["qm", "--mode", "defect", "--table", big]).status.code(), Some(0));
    let err = run(&["norm", "--group", "{\"kind\": ", "--field", "Qp:2"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("line 1"));
}

#[test]
fn catalogue_is_deterministic_csv() {
    let a = run(&["catalogue", "--format", "csv"]);
    let b = run(&["catalogue", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,params,prime,norm,certified,theorem_tag"));
    assert!(text.contains("psl_chain,\"n=2,ell=3,a=3\",2,4,true,"));
    assert!(text.contains("tree_fix,d=3,2,infinity,true,"));
    let t = run(&["catalogue", "--format", "text"]);
    assert!(String::from_utf8(t.stdout).unwrap().contains("family\tparams"));
}

#[test]
fn json_reports_round_trip() {
    let out = run(&["topo", "--complex", "sphere2", "--op", "volume", "--p", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["certificate"]["cycle"].as_array().unwrap().len(), 4);
}
