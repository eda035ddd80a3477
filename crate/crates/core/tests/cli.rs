//! End-to-end runs of the `blstate` binary against golden files in
//! `tests/golden`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn blstate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blstate")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn construct_four_element() {
    let o = blstate(&["construct", "four-element"]);
    assert_eq!(o.status.code(), Some(0));
    golden("construct_four_element.json", &stdout(&o));
}

#[test]
fn construct_shape() {
    let o = blstate(&["construct", "shape(1,1,1)"]);
    assert_eq!(o.status.code(), Some(0));
    golden("construct_shape_1_1_1.json", &stdout(&o));
}

#[test]
fn classify_four_element() {
    let o = blstate(&["classify", "four-element", "--operator", "sigma"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["local=true", "perfect=false", "ssbl_simple=true"] {
        assert!(out.lines().any(|l| l == line), "{line} missing");
    }
    golden("classify_four_element.txt", &out);
}

#[test]
fn enumerate_mv_chain_prints_identity() {
    let o = blstate(&["enumerate-operators", "mv_chain(3)", "--class", "state"]);
    assert_eq!(o.status.code(), Some(0));
    golden("enumerate_mv_chain_3.txt", &stdout(&o));
}

#[test]
fn enumerate_parallel_matches_serial() {
    let serial = blstate(&["enumerate-operators", "product(mv-chain(2),mv-chain(2))", "--class", "strong"]);
    let parallel =
        blstate(&["enumerate-operators", "product(mv-chain(2),mv-chain(2))", "--class", "strong", "--parallel"]);
    assert_eq!(stdout(&serial), stdout(&parallel));
}

#[test]
fn filters_and_states() {
    let f = blstate(&["filters", "four-element", "--operator", "sigma"]);
    assert_eq!(f.status.code(), Some(0));
    golden("filters_four_element.txt", &stdout(&f));
    let s = blstate(&["states", "four-element", "--operator", "sigma"]);
    assert_eq!(s.status.code(), Some(0));
    golden("states_four_element.txt", &stdout(&s));
    let d = blstate(&["states", "diagonal(mv-chain(1))", "--operator", "sigma1"]);
    assert_eq!(d.status.code(), Some(0));
    golden("states_diagonal.txt", &stdout(&d));
}

#[test]
fn search_nonstrong_on_product() {
    let o = blstate(&["search-nonstrong", "product(godel-chain(3),mv-chain(1))"]);
    assert_eq!(o.status.code(), Some(0));
    golden("search_nonstrong_product.txt", &stdout(&o));
}

#[test]
fn verify_document_from_disk() {
    let dir = scratch("verify_ok");
    let doc = dir.join("four.json");
    std::fs::write(&doc, stdout(&blstate(&["construct", "four-element"]))).unwrap();
    let o = blstate(&["verify", doc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    golden("verify_four_element.txt", &stdout(&o).replace(dir.to_str().unwrap(), "DIR"));
}

#[test]
fn verify_mutated_table_exits_one_with_witness() {
    let dir = scratch("verify_mutated");
    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&blstate(&["construct", "four-element"]))).unwrap();
    // a * b = b breaks a * b <= a.
    doc["tables"]["prod"][1][2] = 2.into();
    doc["tables"]["prod"][2][1] = 2.into();
    let mutated = serde_json::to_string_pretty(&doc).unwrap();
    let doc = dir.join("mutated.json");
    std::fs::write(&doc, mutated).unwrap();
    let o = blstate(&["verify", doc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("axiom violation"), "{err}");
    assert!(err.contains("fails at ("), "{err}");
}

#[test]
fn verify_rejected_operator_exits_one() {
    let dir = scratch("verify_rejected");
    let text = stdout(&blstate(&["construct", "four-element"]));
    let doc = dir.join("bad-operator.json");
    std::fs::write(&doc, text.replace(r#""map": ["0", "a", "1", "1"]"#, r#""map": ["0", "b", "1", "1"]"#)).unwrap();
    let o = blstate(&["verify", doc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fails at ("), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(blstate(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(blstate(&["verify", "no-such-algebra"]).status.code(), Some(2));
    assert_eq!(blstate(&["classify", "four-element", "--operator", "tau"]).status.code(), Some(2));
    assert_eq!(blstate(&["enumerate-operators", "mv-chain(2)", "--class", "weird"]).status.code(), Some(2));
    assert_eq!(blstate(&["paper-suite", "--claims", "no.such-claim"]).status.code(), Some(2));

    let dir = scratch("bad_json");
    let doc = dir.join("bad.json");
    std::fs::write(&doc, "{\"format_version\": 1,\n \"labels\": [\"0\", \"1\"],\n \"tables\": {\"prod\": []}}\n")
        .unwrap();
    let o = blstate(&["verify", doc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn empty_corpus_exits_two() {
    let dir = scratch("empty_corpus");
    let o = blstate(&["paper-suite", "--corpus", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no .json documents"));
}

#[test]
fn suite_on_document_corpus() {
    let dir = scratch("doc_corpus");
    for spec in ["four-element", "mv-chain(2)"] {
        let name = spec.replace(['(', ')'], "");
        std::fs::write(dir.join(format!("{name}.json")), stdout(&blstate(&["construct", spec]))).unwrap();
    }
    let o = blstate(&["paper-suite", "--corpus", dir.to_str().unwrap(), "--claims", "op.top-fixed,states"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    golden("suite_document_corpus.txt", &stdout(&o));
}

#[test]
fn suite_operator_count_on_summand() {
    let o = blstate(&["paper-suite", "--claims", "summand.operator-count"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.contains("shape(1,1,1)")).expect("summand record");
    assert!(line.starts_with("PASS"), "{line}");
    assert!(line.contains("6 state-operators, at least 4"), "{line}");
    golden("suite_operator_count.txt", &out);
}

#[test]
fn suite_reports_rejected_operator_as_passing_negative() {
    let o = blstate(&["paper-suite", "--claims", "op.rejected-diagnosed", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec = report["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["instance"] == "shape(0,4,4)")
        .expect("record for the rejected operator");
    assert_eq!(rec["verdict"], "pass");
}

#[test]
fn suite_json_is_deterministic_and_written_to_file() {
    let dir = scratch("suite_out");
    let a = dir.join("one.json");
    let b = dir.join("many.json");
    let base = ["paper-suite", "--keep-going", "--format", "json"];
    let one = blstate(&[&base[..], &["--workers", "1", "--output", a.to_str().unwrap()]].concat());
    let many = blstate(&[&base[..], &["--workers", "6", "--output", b.to_str().unwrap()]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(many.status.code(), Some(0));
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["summary"]["fail"], 0);
    assert!(report["records"][0].get("elapsed_ms").is_none());
}

#[test]
fn suite_timings_are_opt_in() {
    let o = blstate(&["paper-suite", "--claims", "op.top-fixed", "--format", "json", "--timings"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["records"][0]["elapsed_ms"].is_u64());
}

#[test]
fn help_exits_zero() {
    let o = blstate(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("paper-suite"));
}
