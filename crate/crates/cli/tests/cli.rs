use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn pcr(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pcr"));
    cmd.args(args).env_remove("PCR_BUDGET").stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = pcr(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const TWO_WIRES: &str = r#"{"wires": 2, "switches": [1]}"#;

const K5: &str =
    r#"{"adjacency": {"a": ["b", "c", "d", "e"], "b": ["c", "d", "e"], "c": ["d", "e"], "d": ["e"], "e": []}}"#;

#[test]
fn non_pappus_validates_through_a_pipe() {
    let arr = ok(&["arr", "non-pappus"], None);
    let report = json(&ok(&["arr", "validate"], Some(&arr)));
    assert_eq!(report["valid"], true);
    assert_eq!(report["crossings"], 36);
}

#[test]
fn invalid_arrangement_exits_one() {
    let out = pcr(&["arr", "validate"], Some(r#"{"wires": 3, "switches": [1, 1]}"#));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&String::from_utf8_lossy(&out.stdout))["valid"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pcr(&["ga", "build"], None).status.code(), Some(2));
    assert_eq!(pcr(&["draw", "analyze", "/no/such/file.json"], None).status.code(), Some(2));
    assert_eq!(pcr(&["arr", "validate"], Some("not json")).status.code(), Some(2));
    assert_eq!(pcr(&["accept", "--only", "12"], None).status.code(), Some(2));
}

#[test]
fn ga_two_wires_matches_the_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "a.json", TWO_WIRES);
    let drawing = ok(&["ga", "build", "--arrangement", &arr, "--m", "1"], None);
    assert_eq!(json(&drawing), json(&std::fs::read_to_string(golden("ga_2_1_drawing.json")).unwrap()));
    let graph = ok(&["ga", "build", "--arrangement", &arr, "--m", "1", "--graph"], None);
    assert_eq!(json(&graph), json(&std::fs::read_to_string(golden("ga_2_1_graph.json")).unwrap()));
    let svg = ok(&["ga", "build", "--arrangement", &arr, "--m", "1", "--format", "svg"], None);
    assert_eq!(svg, std::fs::read_to_string(golden("ga_2_1.svg")).unwrap());
}

#[test]
fn non_pappus_gadget_has_weighted_count_180() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "np.json", &ok(&["arr", "non-pappus"], None));
    let d = write(&dir, "ga.json", &ok(&["ga", "build", "--s-file", &arr, "--m", "1"], None));
    let report = json(&ok(&["draw", "analyze", &d, "--budget", "1000"], None));
    assert_eq!(report["weighted_crossings"], 180);
    assert_eq!(report["good"], true);
    assert_eq!(report["clams"].as_array().unwrap().len(), 0);
}

#[test]
fn expanded_gadget_has_pcr_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "a.json", TWO_WIRES);
    let d = write(&dir, "e.json", &ok(&["ga", "build", "--arrangement", &arr, "--m", "2", "--expand"], None));
    let report = json(&ok(&["draw", "analyze", &d, "--budget", "1000"], None));
    // C(s,2)(1+4m) with s = 2, m = 2
    assert_eq!(report["crossings"], 9);
    assert_eq!(report["weighted_crossings"], report["crossings"]);
}

#[test]
fn certificate_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "a.json", TWO_WIRES);
    let d = write(&dir, "d.json", &ok(&["ga", "build", "--arrangement", &arr, "--m", "1"], None));
    let cert = write(&dir, "c.json", &ok(&["model", "from-drawing", &d], None));
    let report = json(&ok(&["model", "verify", &cert], None));
    assert_eq!(report["valid"], true);
    let original = json(&ok(&["draw", "analyze", &d], None));
    assert_eq!(original["extension"], "witness");
    assert_eq!(original["witness_verified"], true);
    assert_eq!(report["special_vertices"], original["crossings"]);
    let back = json(&ok(&["model", "to-drawing", &cert], None));
    let back = write(&dir, "b.json", &back.to_string());
    assert_eq!(json(&ok(&["draw", "analyze", &back], None))["crossings"], original["crossings"]);
}

#[test]
fn broken_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "a.json", TWO_WIRES);
    let d = write(&dir, "d.json", &ok(&["ga", "build", "--arrangement", &arr, "--m", "1"], None));
    let mut cert = json(&ok(&["model", "from-drawing", &d], None));
    cert["terminals"].as_array_mut().unwrap().swap(0, 1);
    let out = pcr(&["model", "verify"], Some(&cert.to_string()));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(pcr(&["model", "to-drawing"], Some(&cert.to_string())).status.code(), Some(1));
}

#[test]
fn oracle_on_k5() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(&dir, "k5.json", K5);
    assert_eq!(json(&ok(&["oracle", "cr", "--graph", &g], None))["crossing_number"], 1);
    assert_eq!(json(&ok(&["oracle", "cr", "--graph", &g, "--leq", "0", "--jobs", "2"], None))["answer"], "no");
    let out = pcr(&["oracle", "cr", "--graph", &g, "--budget", "0"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(&dir, "k5.json", K5);
    let out = Command::new(env!("CARGO_BIN_EXE_pcr"))
        .args(["oracle", "cr", "--graph", &g])
        .env("PCR_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn weighted_graph_expands() {
    let g = r#"{"vertices": ["a", "b"], "edges": [{"ends": ["a", "b"], "weight": 3}]}"#;
    let out = json(&ok(&["expand"], Some(g)));
    assert_eq!(out["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(out["edges"].as_array().unwrap().len(), 6);
    let dot = ok(&["expand", "--format", "dot"], Some(g));
    assert!(dot.starts_with("graph G {"));
}

#[test]
fn subdivide_keeps_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "a.json", TWO_WIRES);
    let d = ok(&["ga", "build", "--arrangement", &arr, "--m", "1"], None);
    let before = json(&ok(&["draw", "analyze", "--budget", "1"], Some(&d)))["crossings"].clone();
    let s = ok(&["subdivide"], Some(&d));
    let after = json(&ok(&["draw", "analyze", "--budget", "1"], Some(&s)));
    assert_eq!(after["crossings"], before);
    assert_eq!(after["good"], true);
}

#[test]
fn renders_are_deterministic() {
    let arr = ok(&["arr", "non-pappus"], None);
    let a = ok(&["arr", "render", "--format", "svg"], Some(&arr));
    let b = ok(&["arr", "render", "--format", "svg"], Some(&arr));
    assert_eq!(a, b);
    assert!(a.starts_with("<svg"));
    assert_eq!(a.matches("<polyline").count(), 9);
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "a.json", TWO_WIRES);
    let d = ok(&["ga", "build", "--arrangement", &p, "--m", "1"], None);
    let x = ok(&["draw", "render", "--format", "svg"], Some(&d));
    assert_eq!(x, ok(&["draw", "render", "--format", "svg"], Some(&d)));
    assert!(ok(&["draw", "render", "--format", "dot"], Some(&d)).contains("shape=point"));
}

#[test]
fn emitted_json_reparses_equal() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "a.json", TWO_WIRES);
    let d = ok(&["ga", "build", "--arrangement", &arr, "--m", "2"], None);
    let again = ok(&["draw", "render"], Some(&d));
    assert_eq!(json(&d), json(&again));
}

#[test]
fn accept_prints_one_line_per_criterion() {
    let out = ok(&["accept", "--only", "2"], None);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("criterion 2") && out.contains("PASS"));
    let j = json(&ok(&["accept", "--only", "6", "--format", "json"], None));
    assert_eq!(j[0]["passed"], true);
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("np.json");
    ok(&["arr", "non-pappus", "-o", p.to_str().unwrap()], None);
    let v = json(&std::fs::read_to_string(&p).unwrap());
    assert_eq!(v["wires"], 9);
}
