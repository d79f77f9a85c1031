//! End-to-end tests for the mcf binary: exit codes, output text, JSON
//! schema conformance, CSV shape, environment handling, and determinism.

use std::process::{Command, Output};
use std::sync::OnceLock;

fn mcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcf"))
        .args(args)
        .env_remove("MCF_MAX_DIGITS")
        .output()
        .expect("binary runs")
}

fn mcf_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcf"))
        .args(args)
        .env_remove("MCF_MAX_DIGITS")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited with a code")
}

fn schema() -> &'static jsonschema::Validator {
    static SCHEMA: OnceLock<jsonschema::Validator> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let path = concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../schemas/output.schema.json"
        );
        let text = std::fs::read_to_string(path).expect("schema file is readable");
        let doc: serde_json::Value = serde_json::from_str(&text).expect("schema is JSON");
        jsonschema::validator_for(&doc).expect("schema compiles")
    })
}

fn assert_schema_valid(args: &[&str], expect_code: i32) -> serde_json::Value {
    let out = mcf(args);
    assert_eq!(
        code(&out),
        expect_code,
        "args {args:?}: stderr {}",
        stderr(&out)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("args {args:?}: {e}"));
    if let Err(err) = schema().validate(&doc) {
        panic!("args {args:?}: schema violation: {err}");
    }
    doc
}

#[test]
fn expand_prints_expected_digits() {
    let out = mcf(&["expand", "--base", "2", "7/11"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("digits: [0, 0, 0, 1, 1]"), "{text}");
    assert!(text.contains("terminated: true"), "{text}");

    let out = mcf(&["expand", "--base", "2", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("digits: []"), "{text}");
    assert!(text.contains("terminated: true"), "{text}");
}

#[test]
fn interval_inputs_print_partial_output_before_exit_three() {
    let out = mcf(&[
        "expand",
        "--base",
        "2",
        "sqrt(2)",
        "--precision",
        "16",
        "--max-digits",
        "1000",
    ]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("digits: [-1, 1, 2, 2, 2, 2]"), "{text}");
    assert!(text.contains("terminated: false"), "{text}");
    assert!(
        stderr(&out).contains("precision exhausted"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["expand", "--base", "2", "sqrt(2)"],
        &["expand", "--base", "2", "5/2"],
        &["expand", "--base", "1", "1/2"],
        &["expand", "--base", "2", "sqrt(2)", "--precision", "8"],
        &["expand", "--base", "2", "abc"],
        &["expand", "--base", "2", "1/0"],
        &["bounds", "--base", "2", "7/11", "-n", "9"],
        &["rcf", "3/2"],
        &["rcf", "sqrt(2)", "--max-digits", "10"],
    ];
    for args in cases {
        let out = mcf(args);
        assert_eq!(code(&out), 2, "args {args:?}: stderr {}", stderr(&out));
    }
}

#[test]
fn verify_reports_the_fibonacci_counterexample() {
    let out = mcf(&["verify", "--base", "3", "2/5"]);
    assert_eq!(code(&out), 0, "stderr {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("q_3 = 5/3 < F_3 = 3"), "{text}");
    assert!(text.contains("conditionally-verified"), "{text}");
    assert!(text.contains("result: ok"), "{text}");
}

#[test]
fn audit_of_a_small_grid_passes() {
    let out = mcf(&[
        "audit",
        "--bases",
        "2,3",
        "--grid-q",
        "8",
        "--samples",
        "10",
    ]);
    assert_eq!(code(&out), 0, "stderr {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("result: ok"), "{text}");
    assert!(text.contains("determinant-identity: verified"), "{text}");
}

#[test]
fn json_output_matches_the_schema() {
    let zero_exit: &[&[&str]] = &[
        &["expand", "--base", "2", "7/11", "--format", "json"],
        &["expand", "--base", "2", "0", "--format", "json"],
        &[
            "expand",
            "--base",
            "2",
            "sqrt(2)",
            "--precision",
            "64",
            "--max-digits",
            "8",
            "--format",
            "json",
        ],
        &["convergents", "--base", "3", "2/5", "--format", "json"],
        &["bounds", "--base", "2", "7/11", "--format", "json"],
        &[
            "bounds", "--base", "2", "7/11", "-n", "2", "--format", "json",
        ],
        &[
            "bounds",
            "--base",
            "2",
            "sqrt(2)",
            "--precision",
            "64",
            "--max-digits",
            "6",
            "--format",
            "json",
        ],
        &["verify", "--base", "3", "2/5", "--format", "json"],
        &[
            "audit",
            "--bases",
            "2,3",
            "--grid-q",
            "5",
            "--samples",
            "5",
            "--format",
            "json",
        ],
        &[
            "stats",
            "gauss-kuzmin",
            "--samples",
            "50",
            "-n",
            "2",
            "--seed",
            "3",
            "--format",
            "json",
        ],
        &[
            "stats",
            "mcf-digits",
            "--base",
            "5",
            "--samples",
            "20",
            "--depth",
            "6",
            "--seed",
            "2",
            "--format",
            "json",
        ],
        &["rcf", "7/11", "--format", "json"],
    ];
    for args in zero_exit {
        assert_schema_valid(args, 0);
    }
    let partial = assert_schema_valid(
        &[
            "expand",
            "--base",
            "2",
            "sqrt(2)",
            "--precision",
            "16",
            "--max-digits",
            "1000",
            "--format",
            "json",
        ],
        3,
    );
    assert_eq!(partial["terminated"], serde_json::json!(false));
    assert_eq!(partial["remainder"]["type"], serde_json::json!("interval"));
}

#[test]
fn csv_output_has_headers_and_lf_line_endings() {
    let out = mcf(&["expand", "--base", "2", "7/11", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("index,digit\n"), "{text}");
    assert!(!text.contains('\r'), "CSV must use LF endings");

    let out = mcf(&["convergents", "--base", "3", "2/5", "--format", "csv"]);
    let text = stdout(&out);
    assert!(
        text.starts_with("n,p,q,q_integer,value,determinant_ok\n"),
        "{text}"
    );
    assert!(text.contains("3,2/3,5/3,false,2/5,true\n"), "{text}");

    let out = mcf(&[
        "stats",
        "mcf-digits",
        "--base",
        "5",
        "--samples",
        "10",
        "--depth",
        "4",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("# exploratory"), "{text}");
    assert!(text.contains("digit,count,frequency\n"), "{text}");
}

#[test]
fn environment_variable_caps_digits_and_flags_override_it() {
    let out = mcf_with_env(&["expand", "--base", "2", "7/11"], "MCF_MAX_DIGITS", "3");
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("digits: [0, 0, 0]"),
        "{}",
        stdout(&out)
    );

    let out = mcf_with_env(
        &["expand", "--base", "2", "7/11", "--max-digits", "10"],
        "MCF_MAX_DIGITS",
        "3",
    );
    assert!(
        stdout(&out).contains("digits: [0, 0, 0, 1, 1]"),
        "{}",
        stdout(&out)
    );

    let out = mcf_with_env(&["expand", "--base", "2", "7/11"], "MCF_MAX_DIGITS", "0");
    assert_eq!(code(&out), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: &[&[&str]] = &[
        &[
            "audit",
            "--bases",
            "2,3",
            "--grid-q",
            "6",
            "--samples",
            "25",
            "--format",
            "json",
        ],
        &[
            "stats",
            "gauss-kuzmin",
            "--samples",
            "100",
            "-n",
            "3",
            "--seed",
            "9",
            "--format",
            "csv",
        ],
        &[
            "stats",
            "mcf-digits",
            "--base",
            "10",
            "--samples",
            "40",
            "--depth",
            "8",
            "--seed",
            "4",
            "--format",
            "json",
        ],
    ];
    for args in cases {
        let first = mcf(args);
        let second = mcf(args);
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
        assert_eq!(code(&first), code(&second), "args {args:?}");
    }
}
