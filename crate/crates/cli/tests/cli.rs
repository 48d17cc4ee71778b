use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn catalog_file(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/catalog");
    p.push(format!("{name}.json"));
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewpbw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let mut p = std::env::temp_dir();
    p.push(format!("skewpbw-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn multiply_prints_normal_form() {
    let o = run(&["multiply", "--ring", &catalog_file("dqsq"), "d1", "x1^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q^2*x1^2*d1 + (q+1)*x1");
}

#[test]
fn classify_diagonal_text() {
    let o = run(&[
        "classify",
        "--ring",
        &catalog_file("multiplicative-weyl"),
        "--endo",
        "diag",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Diagonal ε=+1, λ=(2,3,q12)");
}

#[test]
fn classify_json_fields_are_stable() {
    let cases = [
        ("multiplicative-weyl", "diag", "diagonal", 0),
        ("multiplicative-weyl", "shift", "not_endomorphism", 1),
        ("quantum-torus", "invert", "diagonal", 0),
        ("quantum-plane", "swap", "hypotheses_not_met", 0),
    ];
    for (ring, endo, verdict, code) in cases {
        let o = run(&[
            "classify",
            "--json",
            "--ring",
            &catalog_file(ring),
            "--endo",
            endo,
        ]);
        assert_eq!(o.status.code(), Some(code), "{ring}/{endo}: {}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        for key in ["verdict", "scalars", "epsilon", "reasons"] {
            assert!(v.get(key).is_some(), "{ring}/{endo} lacks {key}");
        }
        assert_eq!(v["verdict"], verdict);
    }
    let o = run(&[
        "classify",
        "--json",
        "--ring",
        &catalog_file("quantum-torus"),
        "--endo",
        "invert",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["epsilon"], -1);
    assert_eq!(v["scalars"], serde_json::json!(["1", "1", "1"]));
}

#[test]
fn catalog_list_and_show() {
    let o = run(&["catalog", "list"]);
    assert_eq!(
        stdout(&o).lines().collect::<Vec<_>>(),
        [
            "quantum-plane",
            "quantum-torus",
            "multiplicative-weyl",
            "skew-3dim",
            "diffusion",
            "dqsq"
        ]
    );
    let o = run(&["catalog", "show", "diffusion"]);
    let file = std::fs::read_to_string(catalog_file("diffusion")).unwrap();
    assert_eq!(stdout(&o), file.trim_end());
    assert_eq!(run(&["catalog", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    let all: Vec<String> = [
        "quantum-plane",
        "quantum-torus",
        "multiplicative-weyl",
        "skew-3dim",
        "diffusion",
        "dqsq",
    ]
    .iter()
    .map(|n| catalog_file(n))
    .collect();
    let mut args = vec!["validate"];
    for f in &all {
        args.extend(["--ring", f.as_str()]);
    }
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("valid: ").count(), 6);

    let o = run(&[
        "validate",
        "--ring",
        &catalog_file("quantum-plane"),
        "--endo",
        "swap",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("endomorphism swap: invalid"));

    let bad = scratch(
        "noncyclic",
        r#"{ "backend": { "kind": "laurent", "params": ["q"] },
  "variables": { "n": 2 },
  "relations": { "c": { "2,1": "q", "1,2": "q" } } }"#,
    );
    let o = run(&["validate", "--json", "--ring", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["kind"], "inverse_pair");
}

#[test]
fn document_errors_exit_two() {
    let broken = scratch(
        "broken",
        "{\n  \"backend\": {\n    \"kind\" \"laurent\"\n  }\n}",
    );
    let o = run(&["validate", "--ring", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let neg = scratch(
        "negative",
        r#"{ "backend": { "kind": "rational" },
  "variables": { "n": 3 },
  "endomorphisms": { "e": ["x1", "x2", "x3^-1"] } }"#,
    );
    let o = run(&["classify", "--ring", &neg, "--endo", "e"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("negative exponent on non-Laurent variable"));

    let o = run(&["multiply", "--ring", &catalog_file("dqsq"), "x1 +", "d1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 5"));
}

#[test]
fn derived_documents_parse() {
    for (cmd, extra) in [
        ("gr", vec![]),
        ("localize", vec![]),
        ("laurent", vec!["--r", "2"]),
    ] {
        let mut args = vec![cmd, "--ring", "catalog:multiplicative-weyl"];
        args.extend(extra);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stderr(&o));
        let doc = skewpbw::parse_document(&stdout(&o)).unwrap();
        assert!(doc.presentation.validate().is_valid());
    }
    let o = run(&["gr", "--ring", "catalog:dqsq"]);
    let doc = skewpbw::parse_document(&stdout(&o)).unwrap();
    assert!(doc.presentation.d_entries().is_empty());
}

#[test]
fn independence_reports() {
    let ring = "catalog:quantum-plane";
    assert_eq!(
        stdout(&run(&["independence", "--ring", ring, "2", "3", "5"])),
        "independent"
    );
    let o = run(&["independence", "--json", "--ring", ring, "2", "3", "6"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["independent"], false);
    assert_eq!(v["certificate"]["replays"], true);
    let o = run(&["independence", "--ring", ring, "-1"]);
    assert!(stdout(&o).starts_with("dependent"));
}
