use std::path::PathBuf;
use std::process::{Command, Output};

fn algrest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algrest"))
        .args(args)
        .env_remove("ALGREST_CAP_MULT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const TABLES: &[&str] = &[
    "A_k",
    "D_k",
    "E6",
    "t8-invariants-1",
    "t8-invariants-2",
    "t7-relations",
    "t7-actions",
    "t7-classification",
    "t7-invariants",
    "t7-geometry",
    "semigroup-3-7-11",
];

#[test]
fn reproduced_tables_match_golden_files() {
    for id in TABLES {
        let o = algrest(&["reproduce", id, "--format", "csv"]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&o.stderr));
        let golden = std::fs::read_to_string(golden_dir().join(format!("{id}.csv"))).unwrap();
        assert_eq!(stdout(&o), golden, "{id}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(&format!("PASS {id}")));
    }
}

#[test]
fn full_sweep_passes() {
    let o = algrest(&["reproduce", "*"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("PASS ").count(), TABLES.len());
    assert!(!out.contains("FAIL"));
}

#[test]
fn t7_classification_csv_row() {
    let o = algrest(&["reproduce", "t7-classification", "--format", "csv"]);
    assert!(stdout(&o).lines().any(|l| l == "T7^0,0,2,0"));
}

#[test]
fn unknown_table_is_a_usage_error() {
    assert_eq!(algrest(&["reproduce", "T9"]).status.code(), Some(2));
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(algrest(&[]).status.code(), Some(2));
    assert_eq!(algrest(&["classify", "t7"]).status.code(), Some(2));
    assert_eq!(algrest(&["basis", "t7", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn unreadable_scenario_is_a_failure() {
    assert_eq!(algrest(&["basis", "/nonexistent/x.scn"]).status.code(), Some(1));
}

#[test]
fn basis_dimensions() {
    let o = algrest(&["basis", "t7"]);
    assert!(stdout(&o).starts_with("dim = 7 "));
    let o = algrest(&["basis", "t7", "--flavor", "all"]);
    assert!(stdout(&o).starts_with("dim = 8 "));
    let o = algrest(&["basis", "t8", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 8);
}

#[test]
fn classify_by_coordinates_and_by_name() {
    let o = algrest(&["classify", "t7", "--coords", "1,2,3,0,0,0,0", "--format", "csv"]);
    assert!(stdout(&o).contains("class,T7^0\n"), "{}", stdout(&o));
    let o = algrest(&["classify", "t7", "--omega", "nf3", "--format", "csv"]);
    assert!(stdout(&o).contains("class,T7^3\n"));
    let o = algrest(&["classify", "t8", "--omega", "nf7", "--format", "csv"]);
    assert!(stdout(&o).contains("class,T8^7\n"));
    let o = algrest(&["classify", "e6", "--omega", "e3", "--format", "csv"]);
    assert!(stdout(&o).contains("class,E6^3\n"));
}

#[test]
fn ambiguous_classification_fails() {
    let o = algrest(&["classify", "t8", "--omega", "nf4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ambiguous"));
}

#[test]
fn restrict_inline_form() {
    let o = algrest(&["restrict", "t7", "--omega", "x3*dx1^dx2 - x2*dx3^dx1", "--flavor", "all", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",0")));
}

#[test]
fn invariants_json_lines() {
    let o = algrest(&[
        "invariants",
        "t8",
        "--omega",
        "symplectic: x1, 1/3*x3^3",
        "--relative",
        "C1",
        "--format",
        "json-lines",
    ]);
    let out = stdout(&o);
    assert!(out.contains(r#"{"invariant":"Lt","value":"4"}"#), "{out}");
    assert!(out.contains(r#"{"invariant":"Lt[C1=inf]","value":"4"}"#), "{out}");
}

#[test]
fn component_restriction() {
    let o = algrest(&["invariants", "t7", "--omega", "nf1", "--component", "B2", "--format", "csv"]);
    assert!(stdout(&o).contains("Lt,5\n"), "{}", stdout(&o));
    assert_eq!(algrest(&["basis", "t7", "--component", "B9"]).status.code(), Some(2));
}

#[test]
fn action_table_has_euler_row() {
    let o = algrest(&["action-table", "t7", "--format", "csv"]);
    let out = stdout(&o);
    let euler = out.lines().nth(1).unwrap();
    assert_eq!(
        euler,
        "E,4*[theta1],5*[theta2],5*[theta3],7*[theta4],7*[theta5],7*[theta6],9*[theta7]"
    );
}

#[test]
fn cap_multiplier_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_algrest"))
        .args(["invariants", "t7", "--omega", "nf0"])
        .env("ALGREST_CAP_MULT", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_algrest"))
        .args(["invariants", "t7", "--omega", "nf0", "--format", "csv"])
        .env("ALGREST_CAP_MULT", "2")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("Lt,2\n"));
}

#[test]
fn output_is_deterministic() {
    let a = algrest(&["reproduce", "t7-invariants", "--format", "json-lines"]);
    let b = algrest(&["reproduce", "t7-invariants", "--format", "json-lines"]);
    assert_eq!(a.stdout, b.stdout);
}
