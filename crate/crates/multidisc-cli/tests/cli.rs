//! End-to-end tests of the `multidisc` binary: exit codes, pinned outputs,
//! and the JSON schema.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_multidisc"))
        .args(args)
        .output()
        .expect("binary must run");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn disc_prints_the_quadratic_closed_form() {
    let (code, stdout, _) = run(&["disc", "x^2 + b*x + c", "--var", "x"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "b^2 - 4*c");
}

#[test]
fn disc_prints_the_depressed_cubic_closed_form() {
    let (code, stdout, _) = run(&["disc", "x^3 + p*x + q", "--var", "x"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-4*p^3 - 27*q^2");
}

#[test]
fn disc_missing_variable_exits_3() {
    let (code, _, stderr) = run(&["disc", "y + 1", "--var", "x"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("x"), "stderr should name the variable: {stderr}");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (code, _, stderr) = run(&["disc", "x^2 + + 1", "--var", "x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("column"), "stderr should locate the error: {stderr}");
}

#[test]
fn unknown_flags_exit_2() {
    let (code, _, _) = run(&["disc", "x^2", "--no-such-flag"]);
    assert_eq!(code, 2);
}

#[test]
fn critvals_cubic_text_output() {
    let (code, stdout, _) = run(&["critvals", "x^3 - 3*x"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("F(v) = -27*v^2 + 108"), "{stdout}");
    assert!(stdout.contains("v = -2 (multiplicity 1, exact)"), "{stdout}");
    assert!(stdout.contains("v = 2 (multiplicity 1, exact)"), "{stdout}");
}

#[test]
fn critvals_degenerate_exits_4_and_names_the_stage() {
    let (code, _, stderr) = run(&["critvals", "x^2*y^2"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("stage 2"), "{stderr}");
    assert!(stderr.contains("--squarefree"), "{stderr}");
}

#[test]
fn critvals_squarefree_rescues_the_degenerate_input() {
    let (code, stdout, stderr) = run(&["critvals", "x^2*y^2", "--squarefree"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("F(v) = v^2"), "{stdout}");
    assert!(stdout.contains("v = 0 (multiplicity 2, exact)"), "{stdout}");
    // stage warnings go to stderr in text mode
    assert!(stderr.contains("warning"), "{stderr}");
}

#[test]
fn critvals_rejects_reserved_value_variable() {
    let (code, _, stderr) = run(&["critvals", "v^2 + 1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--value-var"), "{stderr}");
}

#[test]
fn critvals_value_var_override_works() {
    let (code, stdout, _) = run(&["critvals", "v^2 + 1", "--value-var", "w"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("F(w) ="), "{stdout}");
}

#[test]
fn critvals_json_schema_and_round_trip() {
    let (code, stdout, _) = run(&["critvals", "x^3 - 3*x", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();

    // schema: F string, roots array, warnings array, order array
    let f_text = doc["F"].as_str().unwrap();
    assert!(doc["roots"].is_array());
    assert!(doc["warnings"].is_array());
    assert_eq!(doc["order"], serde_json::json!(["x"]));

    // the printed F re-parses to the exact polynomial the library computes
    let (reparsed, ring) = multidisc::parse::parse_poly(f_text).unwrap();
    let expected = multidisc::parse::parse_in_ring("-27*v^2 + 108", &ring).unwrap();
    assert_eq!(reparsed, expected);

    // every number in roots is a string
    for root in doc["roots"].as_array().unwrap() {
        assert!(root["multiplicity"].is_string());
        match root["kind"].as_str().unwrap() {
            "exact-rational" => assert!(root["value"].is_string()),
            "interval" => {
                let bounds = root["bounds"].as_array().unwrap();
                assert_eq!(bounds.len(), 2);
                assert!(bounds.iter().all(|b| b.is_string()));
            }
            other => panic!("unexpected root kind {other}"),
        }
    }
    let kinds: Vec<&str> = doc["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["exact-rational", "exact-rational"]);
}

#[test]
fn multidisc_folds_the_circle_example() {
    let (code, stdout, _) = run(&["multidisc", "x^2 + y^2 - v", "--order", "x,y"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "64*v");
}

#[test]
fn multidisc_default_order_uses_all_variables() {
    let (code, stdout, _) = run(&["multidisc", "x^2 + y^2 - v"]);
    // default order is (v, x, y): stage 1 eliminates y, then x, then v is
    // skipped only if absent — the v-stage sees 64*v (degree 1) and emits
    // its leading coefficient 64.
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "64");
}

#[test]
fn verify_cubic_reports_containment_and_exits_0() {
    let (code, stdout, _) = run(&["verify", "x^3 - 3*x"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("containment: 2 matched, 0 violations"), "{stdout}");
}

#[test]
fn verify_json_includes_the_report() {
    let (code, stdout, _) = run(&["verify", "x^2 - y^2", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(doc["report"]["violations"], "0");
    assert_eq!(doc["report"]["matched"].as_array().unwrap().len(), 1);
    assert!(doc["report"]["caveat"].as_str().unwrap().contains("box"));
    assert!(doc["report"]["total_starts"].is_string());
}

#[test]
fn verify_accepts_oracle_overrides() {
    let (code, stdout, _) = run(&[
        "verify",
        "x^3 - 3*x",
        "--box",
        "4",
        "--grid",
        "5",
        "--tol",
        "1e-9",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("0 violations"), "{stdout}");
}

#[test]
fn verify_rejects_bad_oracle_flags() {
    let (code, _, _) = run(&["verify", "x^2", "--grid", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "x^2", "--box", "-3"]);
    assert_eq!(code, 2);
}

#[test]
fn selftest_passes() {
    let (code, stdout, _) = run(&["selftest"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("all 8 checks passed"), "{stdout}");
}
