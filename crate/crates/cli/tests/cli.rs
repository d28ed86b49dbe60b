use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn ttw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttw"))
        .args(args)
        .output()
        .expect("run ttw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = ttw(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn check_accepts_a_well_typed_file() {
    let o = ttw(&["check", &data("defs.ttw")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("id : (x0 : Bool 0) -> Bool 0"));
    assert!(stdout(&o).ends_with("6 definitions\n"));
}

#[test]
fn check_of_an_empty_file() {
    let o = ttw(&["check", &data("empty.ttw")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 definitions\n");
}

#[test]
fn check_reports_level_mismatch_with_location() {
    let o = ttw(&["check", &data("bad_level.ttw")]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("bad_level.ttw:1: in `bad`"), "{err}");
    assert!(err.contains("universe level mismatch"), "{err}");
}

#[test]
fn parse_errors_exit_2() {
    let o = ttw(&["check", &data("parse_error.ttw")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse_error.ttw:2:"), "{}", stderr(&o));
    assert_eq!(
        ttw(&["norm", &data("parse_error.ttw"), "--def", "ok"]).status.code(),
        Some(2)
    );
    assert_eq!(ttw(&["check", &data("no_such_file.ttw")]).status.code(), Some(2));
}

#[test]
fn norm_prints_normal_forms() {
    let o = ttw(&["norm", &data("defs.ttw"), "--def", "notTrue"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("def notTrue : Bool 0 := false 0\n"));
    let o = ttw(&["norm", &data("defs.ttw"), "--def", "id"]);
    assert!(stdout(&o).starts_with("def id : (x0 : Bool 0) -> Bool 0 := fun x0 => x0\n"));
    assert!(stdout(&o).contains("Lam(Bool 0, Bool 0, NeBool(Var 0))"));
    let o = ttw(&["norm", &data("defs.ttw"), "--def", "poly"]);
    assert!(
        stdout(&o).contains(":= fun x0 => fun x1 => lift (unlift x1)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn norm_of_an_unknown_name() {
    let o = ttw(&["norm", &data("defs.ttw"), "--def", "missing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown definition `missing`"));
}

#[test]
fn every_definition_normalizes_and_round_trips() {
    for name in ["id", "notTrue", "k", "lifted", "poly", "arrowCode"] {
        let o = ttw(&["norm", &data("defs.ttw"), "--def", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn canon_agrees_with_norm() {
    for (name, expect) in [("k", "true"), ("notTrue", "false")] {
        let o = ttw(&["canon", &data("defs.ttw"), "--def", name]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), expect);
        let n = ttw(&["norm", &data("defs.ttw"), "--def", name]);
        assert!(stdout(&n).starts_with(&format!("def {name} : Bool 0 := {expect} 0")));
    }
}

#[test]
fn canon_rejects_non_booleans() {
    for name in ["id", "lifted", "missing"] {
        assert_eq!(
            ttw(&["canon", &data("defs.ttw"), "--def", name]).status.code(),
            Some(1),
            "{name}"
        );
    }
}

#[test]
fn identity_instance_passes_every_suite() {
    for suite in ["adjunction", "rep", "preservation"] {
        let o = ttw(&["psh-verify", &data("identity.json"), "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn walking_arrow_adjunction() {
    let o = ttw(&["psh-verify", &data("walking_arrow.json"), "--suite", "adjunction"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS adjunction"));
}

#[test]
fn corrupted_composition_exits_3() {
    for suite in ["adjunction", "rep", "preservation"] {
        let o = ttw(&["psh-verify", &data("corrupted.json"), "--suite", suite]);
        assert_eq!(o.status.code(), Some(3));
        assert!(stderr(&o).contains("p∘e"), "{}", stderr(&o));
    }
}

#[test]
fn schema_violations_exit_2() {
    let o = ttw(&["psh-verify", &data("unknown_field.json"), "--suite", "adjunction"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown field `morphisms`"));
    // the suite needs a section the file does not have
    let o = ttw(&["psh-verify", &data("walking_arrow.json"), "--suite", "rep"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rep_suite() {
    let o = ttw(&["psh-verify", &data("counterexample.json"), "--suite", "rep"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("at 1 over *: extension 0, projection a"),
        "{}",
        stdout(&o)
    );
    let o = ttw(&["psh-verify", &data("two_points.json"), "--suite", "rep"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nothing in the slice over pt represents the fiber over *"));
}

#[test]
fn preservation_counterexample() {
    let (code, v) = json(&["psh-verify", &data("counterexample.json"), "--suite", "preservation"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    let w = v["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    let w = w[0].as_str().unwrap();
    assert!(w.starts_with("at 1 over *"), "{w}");
    assert!(w.contains("comparison a is not invertible"), "{w}");
    assert!(w.contains("image of q is not a representation"), "{w}");
}

#[test]
fn json_output_has_status_and_witnesses() {
    let (code, v) = json(&["check", &data("defs.ttw")]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    assert!(v["witnesses"].as_array().unwrap().is_empty());
    let (code, v) = json(&["check", &data("bad_level.ttw")]);
    assert_eq!((code, v["status"].as_str()), (1, Some("fail")));
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
    let (code, v) = json(&["psh-verify", &data("corrupted.json"), "--suite", "adjunction"]);
    assert_eq!((code, v["status"].as_str()), (3, Some("law-violation")));
    let (code, v) = json(&["canon", &data("defs.ttw"), "--def", "k"]);
    assert_eq!((code, v["output"][0].as_str()), (0, Some("true")));
    let (code, v) = json(&["corpus", "--suite", "computation", "--count", "5"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
}

#[test]
fn corpus_suites_pass_and_are_deterministic() {
    for args in [
        ["--suite", "stability", "--seed", "1", "--size", "4"],
        ["--suite", "beta", "--seed", "1", "--size", "5"],
        ["--suite", "psh-random", "--seed", "7", "--size", "3"],
    ] {
        let mut all = vec!["corpus"];
        all.extend_from_slice(&args);
        let a = ttw(&all);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stdout(&a));
        assert!(stdout(&a).starts_with("PASS"));
        assert_eq!(stdout(&a), stdout(&ttw(&all)), "{args:?}");
    }
}

#[test]
fn step_limit_is_read_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ttw"))
        .args(["norm", &data("defs.ttw"), "--def", "k"])
        .env("TTW_MAX_STEPS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("step limit of 3"), "{}", stderr(&o));
}
