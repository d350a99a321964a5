use std::io::Write;
use std::process::{Command, Output};

use loewner_lab::explorer::HuntResult;
use loewner_lab::{InequalityReport, Relation};
use serde_json::Value;
use tempfile::NamedTempFile;

const EXAMPLE_27: &str = r#"{"A": [[3, 1], [1, 5]], "B": [[10, -1], [-1, 9]]}"#;
const EXAMPLE_28: &str = r#"{"A": [[1, 1], [1, 1]], "B": [[3, 1], [1, 1]]}"#;

fn input(json: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(json.as_bytes()).unwrap();
    file
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loewner-lab"))
        .args(args)
        .env_remove("LOEWNER_LAB_SEED")
        .output()
        .unwrap()
}

fn run_with(json: &str, args: &[&str]) -> Output {
    let file = input(json);
    let mut all = vec!["--input", file.path().to_str().unwrap()];
    all.extend_from_slice(args);
    run(&all)
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn report(out: &Output) -> InequalityReport {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn power_six_holds() {
    let out = run_with(
        EXAMPLE_27,
        &[
            "check",
            "--theorem",
            "power",
            "--r",
            "6",
            "--output-format",
            "json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    let diff = r.rhs.sub(&r.lhs).unwrap();
    let expected = [[985931.21, -476992.0], [-476992.0, 433279.0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((diff.get(i, j) / expected[i][j] - 1.0).abs() < 5e-3);
        }
    }
    assert_eq!(r.verdict.relation, Relation::GreaterOrEqual);
}

#[test]
fn power_three_on_overlapping_spectra_is_violated() {
    let out = run_with(
        EXAMPLE_28,
        &[
            "check",
            "--theorem",
            "power",
            "--r",
            "3",
            "--output-format",
            "json",
        ],
    );
    assert_eq!(code(&out), 2);
    let r = report(&out);
    assert_eq!(r.hypothesis_holds(), Some(false));
    assert!((r.verdict.min_eig_of_difference - (6.0 - 40f64.sqrt())).abs() < 1e-9);
}

#[test]
fn equal_operators_hold() {
    let out = run_with(
        r#"{"A": [[2, 1], [1, 3]], "B": [[2, 1], [1, 3]]}"#,
        &[
            "check",
            "--theorem",
            "thm1",
            "--v",
            "0.5",
            "--f",
            "power:2",
            "--output-format",
            "json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out).verdict.relation, Relation::Equal);
}

#[test]
fn failed_hypothesis_with_valid_conclusion_exits_3() {
    // t² is operator convex, so the conclusion holds whatever the spectra
    let out = run_with(
        EXAMPLE_28,
        &["check", "--theorem", "thm1", "--v", "0.5", "--f", "power:2"],
    );
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("HOLDS (hypothesis failed)"));
}

#[test]
fn function_from_input_file() {
    let json = r#"{"A": [[3, 1], [1, 5]], "B": [[10, -1], [-1, 9]], "f": {"family": "power", "r": 6}, "v": 0.5}"#;
    let out = run_with(json, &["check", "--theorem", "check_thm1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn input_errors_exit_4() {
    let out = run_with(
        r#"{"A": [[1, "x"], [1, 1]]}"#,
        &["check", "--theorem", "power", "--r", "2"],
    );
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("`A[0][1]`"), "{}", stderr(&out));

    let out = run_with(
        r#"{"A": [[1, 2], [3, 1]], "B": [[1, 0], [0, 1]]}"#,
        &["check", "--theorem", "power", "--r", "2"],
    );
    assert_eq!(code(&out), 4);

    let out = run_with(
        r#"{"A": [[1]], "C": 1}"#,
        &["check", "--theorem", "power", "--r", "2"],
    );
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("unknown field"), "{}", stderr(&out));

    let out = run_with(
        r#"{"A": [[1]]}"#,
        &["check", "--theorem", "power", "--r", "2"],
    );
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("`B`"));

    let out = run_with(EXAMPLE_27, &["check", "--theorem", "nonsense"]);
    assert_eq!(code(&out), 4);

    let out = run_with(
        EXAMPLE_27,
        &["check", "--theorem", "thm1", "--f", "power:x"],
    );
    assert_eq!(code(&out), 4);

    let out = run_with(
        EXAMPLE_27,
        &[
            "--tolerance",
            "-1",
            "check",
            "--theorem",
            "power",
            "--r",
            "2",
        ],
    );
    assert_eq!(code(&out), 4);

    assert_eq!(code(&run(&["no-such-command"])), 4);
    assert_eq!(
        code(&run(&[
            "check",
            "--theorem",
            "power",
            "--input",
            "/nonexistent.json"
        ])),
        4
    );
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("constants"));
}

#[test]
fn sandwich_checkers_use_automatic_bounds() {
    let out = run_with(
        EXAMPLE_27,
        &[
            "check",
            "--theorem",
            "reverse_subadditivity",
            "--f",
            "inverse_shift:0",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run_with(
        EXAMPLE_27,
        &["check", "--theorem", "concave_lower", "--f", "power:0.5"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run_with(
        EXAMPLE_27,
        &["check", "--theorem", "K_k_subadditivity", "--f", "power:2"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    // m above 2n violates 0 < m <= 2n
    let out = run_with(
        EXAMPLE_27,
        &[
            "check",
            "--theorem",
            "concave_lower",
            "--f",
            "power:0.5",
            "--m",
            "6",
            "--M",
            "30",
        ],
    );
    assert_eq!(code(&out), 4);
}

#[test]
fn ell_sum_and_inner_jensen() {
    let out = run_with(
        EXAMPLE_27,
        &[
            "check",
            "--theorem",
            "ell_sum",
            "--f",
            "power:0.5",
            "--mode",
            "concave_lower",
            "--ell",
            "3",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let json = r#"{"A": [[3, 1], [1, 5]], "x": [0.6, 0.8]}"#;
    let out = run_with(
        json,
        &[
            "check",
            "--theorem",
            "inner_jensen",
            "--f",
            "power:2",
            "--output-format",
            "json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn constants_command() {
    let out = run(&[
        "constants",
        "--m",
        "1",
        "--M",
        "2",
        "--f",
        "power:2",
        "--output-format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["big_k"]["value"].as_f64().unwrap() - 1.125).abs() < 1e-10);
    assert!(v["big_k_grid_delta"].as_f64().unwrap() < 1e-7);

    let out = run(&[
        "constants",
        "--m",
        "2",
        "--M",
        "3",
        "--f",
        "inverse_shift:0",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1.04167"));

    let out = run(&[
        "constants",
        "--m",
        "1",
        "--M",
        "5",
        "--f",
        "affine:1,0",
        "--output-format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["big_k"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["small_k"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    assert_eq!(
        code(&run(&[
            "constants",
            "--m",
            "3",
            "--M",
            "2",
            "--f",
            "power:2"
        ])),
        4
    );
    assert_eq!(
        code(&run(&[
            "constants",
            "--m",
            "0",
            "--M",
            "2",
            "--f",
            "power:2"
        ])),
        4
    );
}

#[test]
fn hh_command() {
    let out = run_with(
        r#"{"A": [[1]], "B": [[2]]}"#,
        &["hh", "--f", "power:2", "--output-format", "json"],
    );
    let r = report(&out);
    assert!(r.holds());
    // point spectra: every mean 1 + v lies strictly between them
    assert_eq!(r.hypothesis_holds(), Some(true));
    assert_eq!(code(&out), 0);
    let integral = r.chain_links[0].verdict.min_eig_of_difference;
    assert!((integral - (7.0 / 3.0 - 2.25)).abs() < 1e-10);
    assert_eq!(
        code(&run_with(
            r#"{"A": [[1]], "B": [[2]]}"#,
            &["hh", "--f", "power:2", "--nodes", "0"]
        )),
        4
    );
}

#[test]
fn hunt_finds_cubic_violations_and_is_deterministic() {
    let args = [
        "hunt",
        "--theorem",
        "power",
        "--r",
        "3",
        "--trials",
        "2000",
        "--output-format",
        "json",
    ];
    let first = run(&args);
    assert_eq!(code(&first), 2);
    let result: HuntResult = serde_json::from_slice(&first.stdout).unwrap();
    assert!(!result.violations.is_empty());
    assert!(result.worst_margin < 0.0);
    assert_eq!(first.stdout, run(&args).stdout);

    let other = run(&[
        "--seed",
        "1",
        "hunt",
        "--theorem",
        "power",
        "--r",
        "3",
        "--trials",
        "2000",
        "--output-format",
        "json",
    ]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn hunt_on_operator_convex_power_is_clean() {
    let out = run(&["hunt", "--theorem", "power", "--r", "2", "--trials", "2000"]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "hunt",
        "--theorem",
        "thm1:0.5",
        "--f",
        "power:6",
        "--trials",
        "2000",
        "--interval",
        "1,1000",
        "--require-hypothesis",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(code(&run(&["hunt", "--theorem", "nope", "--r", "2"])), 4);
}

#[test]
fn seed_from_environment() {
    let args = [
        "probe",
        "--condition",
        "thm1",
        "--trials",
        "500",
        "--output-format",
        "json",
    ];
    let explicit = run(&[
        "--seed",
        "7",
        "probe",
        "--condition",
        "thm1",
        "--trials",
        "500",
        "--output-format",
        "json",
    ]);
    let from_env = Command::new(env!("CARGO_BIN_EXE_loewner-lab"))
        .args(args)
        .env("LOEWNER_LAB_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(explicit.stdout, from_env.stdout);
}

#[test]
fn probe_command() {
    let out = run(&[
        "probe",
        "--condition",
        "thm2",
        "--trials",
        "20000",
        "--output-format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r: HuntResult = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.satisfying_hypothesis_count, 0);
    assert_eq!(code(&run(&["probe", "--condition", "nope"])), 4);
}

#[test]
fn paper_command_fixtures() {
    let out = run(&["paper"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("5/5 fixtures pass"));

    let out = run(&["paper", "--output-format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);

    // the printed values carry only a few digits
    let out = run(&["--tolerance", "1e-12", "paper"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn json_reports_round_trip() {
    let out = run_with(
        EXAMPLE_27,
        &[
            "check",
            "--theorem",
            "decreasing_chain",
            "--f",
            "inverse_shift:1",
            "--output-format",
            "json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    let again: InequalityReport =
        serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, again);

    let out = run(&[
        "hunt",
        "--theorem",
        "power",
        "--r",
        "3",
        "--trials",
        "300",
        "--output-format",
        "json",
    ]);
    let h: HuntResult = serde_json::from_slice(&out.stdout).unwrap();
    let again: HuntResult = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
    assert_eq!(h, again);
}
