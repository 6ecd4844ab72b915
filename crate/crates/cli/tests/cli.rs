use liedeform::deformed::DExport;
use liedeform::{catalog, DAlgebra, GAlgebra, UMatrix};
use liedeform_cli::{run, Outcome, EXIT_FAILED, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn call(args: &[&str]) -> Outcome {
    call_with_stdin(args, "")
}

fn call_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("liedeform").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.output).unwrap_or_else(|e| panic!("{e}: {}", o.output))
}

#[test]
fn classify_b2() {
    let o = call(&["classify", "--cartan", "[[2,-1],[-2,2]]"]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["type_ok"], true);
    assert_eq!(v["symmetrizer"], serde_json::json!([2, 1]));
    assert_eq!(v["type"], "B2");
}

#[test]
fn classify_rejects_affine_and_malformed() {
    let o = call(&["classify", "--cartan", "[[2,-2],[-2,2]]"]);
    assert_eq!(o.code, EXIT_FAILED);
    assert_eq!(json(&o)["type_ok"], false);
    let o = call(&["classify", "--cartan", "[[2,-1],"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(json(&o)["error"].is_string());
}

#[test]
fn classify_accepts_object_form() {
    let o = call(&["classify", "--cartan", r#"{"cartan": [[2,-1],[-3,2]]}"#]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(json(&o)["type"], "G2");
}

#[test]
fn verify_baseline_and_nonsingular_u() {
    let o = call(&["verify", "--catalog", "A2", "--u", "zero"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(json(&o)["all_passed"], true);
    let o = call(&[
        "verify",
        "--catalog",
        "A2",
        "--u",
        r#"[["0","1"],["-1","0"]]"#,
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["rad_u_dim"], 0);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["violation_count"] == 0));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["verify", "--catalog", "Z9"],
        vec!["verify", "--catalog", "A2", "--u", "random"],
        vec![
            "verify",
            "--catalog",
            "A2",
            "--u",
            r#"[["0","1"],["1","0"]]"#,
        ],
        vec![
            "verify",
            "--catalog",
            "A3",
            "--u",
            r#"[["0","1"],["-1","0"]]"#,
        ],
        vec!["verify"],
        vec!["roots", "--cartan", "/nonexistent/file.json"],
        vec!["frobnicate"],
    ] {
        let o = call(&args);
        assert_eq!(o.code, EXIT_INPUT, "{args:?}");
        assert!(json(&o)["error"].is_string(), "{args:?}");
    }
}

#[test]
fn random_seed_forms_agree() {
    let a = call(&["verify", "--catalog", "B2", "--u", "random", "--seed", "9"]);
    let b = call(&["verify", "--catalog", "B2", "--u", "random:9"]);
    assert_eq!(a, b);
    let c = call(&["verify", "--catalog", "B2", "--u", "random:10"]);
    assert_ne!(a.output, c.output);
}

#[test]
fn roots_listing() {
    let v = json(&call(&["roots", "--catalog", "G2"]));
    assert_eq!(v["count"], 12);
    assert_eq!(v["highest"], serde_json::json!([3, 2]));
    assert_eq!(v["positive"][0]["coords"], serde_json::json!([0, 1]));
}

#[test]
fn d_table_round_trips() {
    let o = call(&["table", "--catalog", "B2", "--u", "random:4"]);
    assert_eq!(o.code, EXIT_OK);
    let e: DExport = serde_json::from_str(&o.output).unwrap();
    let back = DAlgebra::import(&e).unwrap();
    let c = catalog::named("B2").unwrap();
    let g = GAlgebra::from_cartan(&c).unwrap();
    let built = DAlgebra::build(&g, &UMatrix::random(2, 4)).unwrap();
    assert_eq!(back, built);
    assert!(e.table.gram.iter().flatten().all(|s| !s.contains('.')));
}

#[test]
fn g_table_exports_basis_labels() {
    let v = json(&call(&["table", "--algebra", "g", "--catalog", "A2"]));
    let basis: Vec<String> = serde_json::from_value(v["basis"].clone()).unwrap();
    assert_eq!(
        basis,
        ["E[-1,-1]", "E[-1,0]", "E[0,-1]", "H1", "H2", "E[0,1]", "E[1,0]", "E[1,1]"]
    );
}

#[test]
fn structure_report() {
    let v = json(&call(&[
        "structure",
        "--catalog",
        "A3",
        "--u",
        r#"{"u": [["0","2","0"],["-2","0","0"],["0","0","0"]]}"#,
    ]));
    assert_eq!(v["rad_u_dim"], 1);
    assert_eq!(v["l_dim"], 1);
    assert_eq!(v["l_derived_series_dims"], serde_json::json!([1, 0]));
    assert_eq!(v["m_derived_series_dims"], serde_json::json!([15]));
    assert_eq!(v["killing_radical_contains_l"], true);
}

#[test]
fn job_from_stdin_matches_flags() {
    let job = r#"{"command": "verify", "catalog": "A2", "u": "random", "seed": 3}"#;
    let a = call_with_stdin(&["job"], job);
    let b = call(&["verify", "--catalog", "A2", "--u", "random", "--seed", "3"]);
    assert_eq!(a, b);
    let bad = call_with_stdin(&["job"], r#"{"command": "verify"}"#);
    assert_eq!(bad.code, EXIT_INPUT);
}

#[test]
fn text_format_and_out_file() {
    let o = call(&["verify", "--catalog", "A1", "--format", "text"]);
    assert!(o
        .output
        .lines()
        .all(|l| l.starts_with("PASS") || l == "all checks passed"));
    let dir = std::env::temp_dir().join(format!("liedeform-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = call(&[
        "classify",
        "--catalog",
        "F4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.output.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["symmetrizer"], serde_json::json!([2, 2, 1, 1]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cartan_from_file() {
    let dir = std::env::temp_dir().join(format!("liedeform-cli-file-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.json");
    std::fs::write(&path, r#"{"cartan": [[2,-1,0],[-1,2,-2],[0,-1,2]]}"#).unwrap();
    let v = json(&call(&["classify", "--cartan", path.to_str().unwrap()]));
    assert_eq!(v["type"], "C3");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_exits_zero() {
    let o = call(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.output.contains("Bourbaki"));
}
