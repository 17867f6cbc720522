use counters_cli::{run, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, EXIT_UNDEFINED};
use serde_json::{json, Value};

fn counters(args: &[&str], stdin: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("counters").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = counters(args, "");
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out.trim_end().to_owned()
}

#[test]
fn eval_prints_canonical_text() {
    assert_eq!(ok(&["eval", "0d0"]), "0d0");
    assert_eq!(ok(&["eval", "3d4 + 1d2"]), "1d2 + 3d4");
    assert_eq!(
        ok(&["eval", "(-1d0 + (5d2)(2d1)*) hres (-1d-5 + (3d0)(1d2)*)"]),
        "0d0 + (1d2 + 2d3)(3d2)*"
    );
    assert_eq!(ok(&["eval", "1d1 oplus 2d5 wedge 0d3"]), "1d1 + 2d3");
    assert_eq!(ok(&["eval", "eps hadamard 1d1"]), "eps");
}

#[test]
fn eval_reads_stdin() {
    let (code, out, _) = counters(&["eval", "-"], "  5d2 hadamard 3d2\n");
    assert_eq!((code, out.as_str()), (EXIT_OK, "8d2\n"));
}

#[test]
fn json_output() {
    let out = ok(&["--json", "eval", "-1d0 + (5d2)(2d1)*"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, json!({ "transient": [[-1, 0]], "pattern": [[5, 2]], "period": [2, 1] }));
    assert_eq!(out, r#"{"transient":[[-1,0]],"pattern":[[5,2]],"period":[2,1]}"#);

    let v: Value = serde_json::from_str(&ok(&["eval", "2d1 + 3dinf", "--json"])).unwrap();
    assert_eq!(v, json!({ "transient": [[2, 1], [3, "inf"]] }));

    let (code, out, _) = counters(&["--json", "eval", "4d5 hdres 1d3"], "");
    assert_eq!(code, EXIT_UNDEFINED);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["undefined"], "exponent 5 exceeds 3");
    assert_eq!(v["witness"], 4);
}

#[test]
fn expand_and_coeff() {
    assert_eq!(ok(&["expand", "0d1 + (2d3)(3d3)*", "--to", "8"]), "0d1 + 2d3 + 5d6 + 8d8");
    assert_eq!(ok(&["expand", "(0d1 + 1d3)(2d5)*", "--to", "-2"]), "0d-2");
    assert_eq!(ok(&["coeff", "(0d1 + 1d3)(2d5)*", "-t", "6"]), "2");
    assert_eq!(ok(&["coeff", "(0d1 + 1d3)(2d5)*", "-t", "-7"]), "0");
    assert_eq!(ok(&["coeff", "1d3", "-t", "4"]), "inf");
    assert_eq!(ok(&["coeff", "1d3", "-t", "-inf"]), "-inf");
    assert_eq!(ok(&["--json", "coeff", "1d3", "-t", "2"]), "1");
}

#[test]
fn check_agrees_with_the_oracle() {
    let out = ok(&["check", "(2d2 + (6d3)(6d8)*) hdres (1d1 + (5d4)(3d4)*)", "--window", "-5:30"]);
    assert_eq!(out, "ok: -3d2 + 1dinf matches the oracle on [-5, 30]");
    ok(&["check", "(0d1 + (2d3)(3d3)*) oplus ((1d2 + 4d5)(4d6)*)", "--window=-3:40"]);
    ok(&["check", "(1d1 + 3d4 + 5dinf) wedge (0d0 + 1d2 + 2d6 + 3dinf)", "--window", "-2:9"]);
    assert_eq!(ok(&["check", "1d1", "--window", "0:1"]), "ok: 1d1 is a literal");

    let (code, out, _) = counters(&["check", "4d5 hdres 1d3", "--window", "0:9"], "");
    assert_eq!((code, out.trim_end()), (EXIT_UNDEFINED, "undefined: exponent 5 exceeds 3"));
    assert_ne!(EXIT_UNDEFINED, EXIT_MISMATCH);
}

#[test]
fn quiet_suppresses_output() {
    let (code, out, _) = counters(&["--quiet", "eval", "5d2 hadamard 3d2"], "");
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    let (code, out, _) = counters(&["-q", "eval", "4d5 hdres 1d3"], "");
    assert_eq!((code, out.as_str()), (EXIT_UNDEFINED, ""));
}

#[test]
fn parse_errors() {
    let (code, _, err) = counters(&["eval", "5d"], "");
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("syntax error at column 3"), "{err}");

    let (code, _, err) = counters(&["eval", "(1d1)(2d0)*"], "");
    assert_eq!(code, EXIT_PARSE);
    assert!(!err.is_empty());

    let (code, _, _) = counters(&["check", "1d1", "--window", "5:1"], "");
    assert_eq!(code, EXIT_PARSE);
    let (code, _, _) = counters(&["frobnicate"], "");
    assert_eq!(code, EXIT_PARSE);
    let (code, out, _) = counters(&["--help"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Usage: counters"), "{out}");
}
