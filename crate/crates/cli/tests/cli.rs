//! End-to-end checks of the command-line surface: documents in, documents
//! and records out, with the documented exit codes.

use std::path::Path;
use std::process::{Command, Output};

use equisig::{parse_document, Document, DocumentBody, Int};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equisig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 output")
}

fn export_corpus(dir: &Path) {
    let out = cli(&["corpus", "export", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn apply_writes_the_moved_form() {
    let dir = tempfile::tempdir().unwrap();
    export_corpus(dir.path());
    let input = dir.path().join("5_1.json");
    let output = dir.path().join("moved.json");
    let out = cli(&[
        "apply",
        input.to_str().unwrap(),
        "--moves",
        "B k=1 sign=+1",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = parse_document(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let DocumentBody::Goeritz(g) = &doc.body else {
        panic!("apply must emit a Goeritz document");
    };
    let expected = equisig::corpus::matrix_entry("5_1-after-B").unwrap().goeritz;
    assert_eq!(g.block_a(), expected.block_a());
    assert_eq!(g.block_b(), expected.block_b());
    assert_eq!(g.correction(), expected.correction());
}

#[test]
fn apply_without_out_prints_a_parseable_document() {
    let dir = tempfile::tempdir().unwrap();
    export_corpus(dir.path());
    let input = dir.path().join("9_40.json");
    let out = cli(&[
        "apply",
        input.to_str().unwrap(),
        "--moves",
        "C sign=+1 color=bicolored",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_document(&stdout(&out)).unwrap();
    assert!(matches!(doc.body, DocumentBody::Goeritz(_)));
}

#[test]
fn compute_reduces_diagram_documents() {
    let dir = tempfile::tempdir().unwrap();
    export_corpus(dir.path());
    let input = dir.path().join("5_1-diagram.json");
    let out = cli(&["compute", input.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let line = stdout(&out);
    assert!(line.contains("\"sigma_tilde\":-4"), "{line}");
    assert!(line.contains("\"det_odd\":true"), "{line}");
}

#[test]
fn unknown_corpus_entry_is_a_domain_error() {
    let out = cli(&["corpus", "show", "10_139"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no corpus entry"));
}

#[test]
fn schema_violations_exit_one_with_the_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"kind": "equivariant-goeritz", "n": 2, "A": [[0, 1], [2, 0]],
           "B": [[0, 0], [0, 0]], "e": 0}"#,
    )
    .unwrap();
    let out = cli(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("$.A"), "{err}");
    assert!(err.contains("not symmetric"), "{err}");
}

#[test]
fn bad_move_scripts_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    export_corpus(dir.path());
    let input = dir.path().join("5_1.json");
    let out = cli(&[
        "verify",
        input.to_str().unwrap(),
        "--moves",
        "A2 i=2 j=2 sign=+1 color=unicolored",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("semantic error"));
}

#[test]
fn singular_parts_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("singular.json");
    // A = B makes the plus part vanish
    std::fs::write(
        &path,
        r#"{"kind": "equivariant-goeritz", "n": 1, "A": [[1]], "B": [[1]], "e": 0}"#,
    )
    .unwrap();
    let out = cli(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("singular"));
}

#[test]
fn verify_json_emits_one_record_per_line() {
    let dir = tempfile::tempdir().unwrap();
    export_corpus(dir.path());
    let input = dir.path().join("5_1.json");
    let out = cli(&[
        "verify",
        input.to_str().unwrap(),
        "--moves",
        "B k=1 sign=+1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("{\"record\":\"step\",\"index\":1,"));
    assert!(lines[1].starts_with("{\"record\":\"summary\","));
    assert!(lines[1].contains("\"compliant\":true"));
}

#[test]
fn every_corpus_entry_reproduces_its_values_through_compute() {
    let dir = tempfile::tempdir().unwrap();
    export_corpus(dir.path());
    for entry in equisig::corpus::matrix_entries() {
        let path = dir.path().join(format!("{}.json", entry.name));
        let out = cli(&["compute", path.to_str().unwrap(), "--json"]);
        assert_eq!(out.status.code(), Some(0), "{}", entry.name);
        let line = stdout(&out);
        for (key, value) in [
            ("sigma_plus", entry.expected.sigma_plus),
            ("sigma_minus", entry.expected.sigma_minus),
            ("e", entry.expected.correction),
            ("sigma_tilde", entry.expected.sigma_tilde),
        ] {
            let needle = format!("\"{key}\":{value}");
            assert!(line.contains(&needle), "{}: missing {needle} in {line}", entry.name);
        }
        assert!(line.contains("\"det_identity\":true"), "{}", entry.name);
        assert!(line.contains("\"det_odd\":true"), "{}", entry.name);
    }
}

#[test]
fn corpus_show_pipes_into_compute() {
    let dir = tempfile::tempdir().unwrap();
    let shown = cli(&["corpus", "show", "6_1"]);
    assert_eq!(shown.status.code(), Some(0));
    // the discrepancy note travels with the document
    let doc: Document = parse_document(&stdout(&shown)).unwrap();
    let notes = doc.notes.clone().unwrap();
    assert!(notes.contains("-2"), "{notes}");
    let path = dir.path().join("6_1.json");
    std::fs::write(&path, stdout(&shown)).unwrap();
    let computed = cli(&["compute", path.to_str().unwrap(), "--json"]);
    assert_eq!(computed.status.code(), Some(0));
    // the engine reports the value the defining formula yields
    assert!(stdout(&computed).contains("\"sigma_tilde\":0"));
    let DocumentBody::Goeritz(g) = doc.body else {
        panic!("goeritz entry");
    };
    assert_eq!(*g.correction(), Int::from(0));
}
