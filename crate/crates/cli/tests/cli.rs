use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracbrauer")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fracbrauer"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("fracbrauer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_example0_passes_with_flags() {
    let o = run(&["validate", &corpus("example0.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f-BC ✓, MS ✓, S ✓"));
}

#[test]
fn validate_example2_is_fbc_but_not_type_s() {
    let o = run(&["validate", &corpus("example2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S ✗"));
}

#[test]
fn duplicate_angle_is_an_input_failure() {
    let f = temp_file("dup.json", r#"{"angles":["a","a"],"P":[["a"]],"L":"trivial","d":{"a":1}}"#);
    let o = run(&["validate", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate angle"));
}

#[test]
fn syntax_error_reports_position() {
    let f = temp_file("broken.json", "{\n  \"angles\": [\n");
    let o = run(&["classify", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"));
}

#[test]
fn axiom_failure_exits_one() {
    // L-block {a, b} with g·a and g·b in different polygons.
    let doc = r#"{"angles":["a","b","c","d"],"g":[["a","c"],["b","d"]],
        "P":[["a","b"],["c"],["d"]],"L":[["a","b"],["c"],["d"]],"d_orbit":{"a":2,"b":2}}"#;
    let o = run(&["validate", &temp_file("f2.json", doc)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("f2 ✗"));
}

#[test]
fn quiver_counts() {
    let o = run(&["quiver", &corpus("example1.json")]);
    assert!(stdout(&o).starts_with("4 vertices, 7 arrows"));
    let o = run(&["quiver", &corpus("example1.json"), "--gabriel"]);
    assert!(stdout(&o).starts_with("4 vertices, 5 arrows"));
    let o = run(&["quiver", &corpus("example2.json"), "--gabriel"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dot_output_is_deterministic() {
    let a = run(&["quiver", &corpus("example0.json"), "--dot"]);
    let b = run(&["quiver", &corpus("example0.json"), "--dot"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("digraph"));
}

#[test]
fn relations_match_printed_counts() {
    let o = run(&["relations", &corpus("example0.json")]);
    assert!(stdout(&o).starts_with("9 generators"));
    let o = run(&["relations", &corpus("example1.json")]);
    assert!(stdout(&o).starts_with("10 generators"));
    assert!(stdout(&o).contains("L(1)L(3)L(2)L(1)"));
}

#[test]
fn algebra_reports() {
    let o = run(&["algebra", &corpus("example2.json")]);
    assert!(stdout(&o).contains("total_dim 1\n"));

    let o = run(&["algebra", &corpus("example0.json"), "--engine=both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("engines agree") && out.contains("total_dim 12\n"));

    let o = run(&["algebra", &corpus("example3.json"), "--frobenius"]);
    assert!(stdout(&o).contains("self-injective: no"));

    let o = run(&["algebra", &corpus("example3.json"), "--engine=type-s"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn algebra_loewy_and_json() {
    let o = run(&["algebra", &corpus("example0.json"), "--loewy", "--frobenius"]);
    let out = stdout(&o);
    assert!(out.contains("P_1: 1 / 3 3 / 2"));
    assert!(out.contains("Nakayama permutation: (1 3 2)"));
    assert!(out.contains("symmetric: no"));

    let o = run(&["algebra", &corpus("example1.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total_dim"], 18);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn gabriel_and_frobenius_verbs() {
    let o = run(&["gabriel", &corpus("example1.json")]);
    let out = stdout(&o);
    assert!(out.contains("reduced arrows: L(3') L(4)"));
    assert!(out.contains("special multiserial: no"));
    assert!(out.contains("(D): yes, (C): yes"));

    let o = run(&["frobenius", &corpus("example1.json")]);
    assert!(stdout(&o).contains("symmetric: yes"));
}

#[test]
fn convert_bc_degrees() {
    let o = run(&["convert-bc", &corpus("gs-example.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let d = &v["d"];
    assert_eq!(v["angles"].as_array().unwrap().len(), 5);
    let got: Vec<i64> = ["V1,1,1", "V1,1,2", "V2,1,1", "V2,2,1", "V1,3,1"]
        .iter()
        .map(|a| d[*a].as_i64().unwrap())
        .collect();
    assert_eq!(got, [3, 3, 3, 1, 2]);
}

#[test]
fn convert_bc_condition_seven_fails() {
    let doc = r#"{"vertices":["u","v"],"zeta":{"x":"u","y":"v"},"polygons":[["x","y"]],
        "orientation":[["x"],["y"]],"multiplicity":{"u":1,"v":1}}"#;
    let o = run(&["convert-bc", &temp_file("c7.json", doc)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("condition (7)"));
}

#[test]
fn reverse_twice_is_identity() {
    let original = std::fs::read_to_string(corpus("example0.json")).unwrap();
    let once = run(&["reverse", &corpus("example0.json")]);
    let twice = run_stdin(&["reverse", "-"], &once.stdout);
    assert_eq!(twice.status.code(), Some(0));
    let canonical = run_stdin(&["reverse", "-"], &run_stdin(&["reverse", "-"], original.as_bytes()).stdout);
    assert_eq!(twice.stdout, canonical.stdout);
    let a: serde_json::Value = serde_json::from_slice(&twice.stdout).unwrap();
    assert_eq!(a["g"], serde_json::json!([["1", "2", "3"], ["1'", "2'", "3'"]]));
    assert_ne!(once.stdout, twice.stdout);
}

#[test]
fn roundtrip_verdicts() {
    for f in ["example1.json", "ex7-6-m2.json"] {
        let o = run(&["roundtrip", &corpus(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stderr(&o));
        assert!(stdout(&o).contains("isomorphic: yes"));
    }
    let o = run(&["roundtrip", &corpus("example2.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not type S"));
}

#[test]
fn corpus_matches_golden_reports() {
    let o = run(&["corpus-check", &corpus("")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stdout(&o).contains("unchecked"));
}

#[test]
fn corpus_check_detects_drift() {
    let manifest = std::fs::read_to_string(corpus("manifest.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    let dir = std::env::temp_dir().join(format!("fracbrauer-drift-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for e in v["entries"].as_array().unwrap() {
        let f = e["file"].as_str().unwrap();
        std::fs::copy(corpus(f), dir.join(f)).unwrap();
    }
    v["entries"][0]["expected"]["algebra"]["total_dim"] = 13.into();
    std::fs::write(dir.join("manifest.json"), v.to_string()).unwrap();
    let o = run(&["corpus-check", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(".algebra.total_dim: expected 13, got 12"));
}
