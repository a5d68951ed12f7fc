use std::process::{Command, Output};

use serde_json::Value;

fn threeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threeform")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("threeform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_catalog_forms() {
    let out = threeform(&["analyze", "--form", "catalog:n5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let a = json(&out);
    assert_eq!(a["rank"], 6);
    assert_eq!(a["order"]["order"], 1);
    assert_eq!(a["span_codims"]["lambda_omega"], 6);
    assert_eq!(a["secant"]["degree"], 2);

    let a = json(&threeform(&["analyze", "--form", "catalog:n6-g2"]));
    assert_eq!((a["order"]["order"].clone(), a["hypersurface_degree"].clone()), (0.into(), 2.into()));
}

#[test]
fn analyze_over_the_rationals_skips_sampling() {
    let a = json(&threeform(&["analyze", "--form", "catalog:n6-g2", "--field", "q"]));
    assert_eq!(a["rank"], 7);
    assert!(a["skipped"].as_object().unwrap().contains_key("hypersurface_degree"));
}

#[test]
fn bad_form_files_are_usage_errors() {
    let path = temp("bad.json");
    std::fs::write(&path, r#"{"n": 5, "field": {"kind": "rational"}, "terms": [{"indices": [3, 3, 4], "coeff": "1"}]}"#).unwrap();
    let out = threeform(&["analyze", "--form", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("term 0"));
    assert_eq!(threeform(&["analyze", "--form", "catalog:nope"]).status.code(), Some(3));
    assert_eq!(threeform(&["analyze", "--form", "/no/such/file"]).status.code(), Some(3));
}

#[test]
fn tables_in_both_formats() {
    let rows = json(&threeform(&["tables", "--n-max", "9"]));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[4]["n"], 7);
    assert_eq!(rows[4]["deg_x"], 57);
    assert_eq!(rows[6]["deg_y"], 808);

    let out = threeform(&["tables", "--n-max", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("n,multideg_x,deg_x"));
    assert!(lines[1].starts_with("3,"));

    assert_eq!(threeform(&["tables", "--n-max", "2"]).status.code(), Some(3));
}

#[test]
fn verify_exit_codes() {
    let out = threeform(&["verify", "enumerative"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "pass");
    for suite in ["secancy", "residual-odd"] {
        assert_eq!(threeform(&["verify", suite, "--seed", "42"]).status.code(), Some(0), "{suite}");
    }
    assert_eq!(threeform(&["verify", "no-such-suite"]).status.code(), Some(3));
}

#[test]
fn verify_is_reproducible() {
    let a = threeform(&["verify", "order", "--seed", "5", "--samples", "20"]);
    let b = threeform(&["verify", "order", "--seed", "5", "--samples", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn help_version_and_bad_flags() {
    assert_eq!(threeform(&["--help"]).status.code(), Some(0));
    assert_eq!(threeform(&["--version"]).status.code(), Some(0));
    assert_eq!(threeform(&["tables", "--bogus"]).status.code(), Some(3));
    assert_eq!(threeform(&[]).status.code(), Some(3));
}

#[test]
fn random_forms_are_deterministic_and_analyzable() {
    let a = threeform(&["random-form", "--n", "7", "--seed", "9"]);
    let b = threeform(&["random-form", "--n", "7", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, threeform(&["random-form", "--n", "7", "--seed", "10"]).stdout);
    let path = temp("random7.json");
    let out = threeform(&["random-form", "--n", "7", "--seed", "9", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let an = json(&threeform(&["analyze", "--form", path.to_str().unwrap(), "--samples", "50"]));
    assert_eq!(an["n"], 7);
    assert_eq!(an["field"]["p"], 1009);
}

#[test]
fn catalog_export() {
    let listing = String::from_utf8(threeform(&["catalog"]).stdout).unwrap();
    assert!(listing.lines().any(|l| l.starts_with("n7-ozeki")));
    let path = temp("n5.json");
    assert_eq!(threeform(&["catalog", "n5", "--out", path.to_str().unwrap()]).status.code(), Some(0));
    let a = json(&threeform(&["analyze", "--form", path.to_str().unwrap(), "--field", "p:101"]));
    assert_eq!(a["rank"], 6);
    assert_eq!(threeform(&["catalog", "n99"]).status.code(), Some(3));
}
