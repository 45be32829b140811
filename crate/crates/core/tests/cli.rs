use std::process::Command;

use reflect_branch::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("reflect-branch").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn table_csv_for_g332() {
    let (code, out, _) = call(&[
        "table", "--d", "1", "--e", "3", "--r", "2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    let entries: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(entries, ["1", "1", "2"]);
    assert!(!out.contains('\r'));
}

#[test]
fn table_json_shape() {
    let (code, out, _) = call(&["table", "--d", "2", "--e", "1", "--r", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["upper"]["r"], 2);
    assert_eq!(v["lower"]["r"], 1);
    let rows = v["rows"].as_array().unwrap().len();
    let cols = v["cols"].as_array().unwrap().len();
    assert_eq!((rows, cols), (5, 2));
    assert_eq!(v["entries"].as_array().unwrap().len(), rows);
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--d", "1", "--e", "4", "--r", "3"];
    let first = call(&args).1;
    for _ in 0..3 {
        assert_eq!(call(&args).1, first);
    }
    let threaded = call(&["--jobs", "2", "table", "--d", "1", "--e", "4", "--r", "3"]).1;
    assert_eq!(threaded, first);
}

#[test]
fn verify_theorem_succeeds() {
    let (code, out, _) = call(&["verify-theorem", "--d", "1", "--e", "5", "--rmax", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for report in v.as_array().unwrap() {
        assert!(report["counterexamples"].as_array().unwrap().is_empty());
        assert!(report["law"].is_string());
        assert!(report["space"].is_number());
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["table", "--d", "0", "--e", "3", "--r", "2"]).0, 2);
    assert_eq!(call(&["table", "--d", "1", "--e", "3"]).0, 2);
    assert_eq!(
        call(&["table", "--d", "1", "--e", "3", "--r", "2", "--bogus"]).0,
        2
    );
    assert_eq!(call(&["frobnicate"]).0, 2);
    let (code, _, err) = call(&["oracle-compare", "--d", "6", "--e", "1", "--r", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"));
    assert_eq!(
        call(&["--jobs", "0", "verify-symbreak", "--max-order", "4"]).0,
        2
    );
}

#[test]
fn law_verifiers() {
    let (code, out, _) = call(&[
        "verify-laws",
        "--max-n",
        "5",
        "--alphabet",
        "3",
        "--orbits",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("\"law\""));
    let (code, _, _) = call(&[
        "verify-laws",
        "--max-n",
        "5",
        "--alphabet",
        "3",
        "--exhaustive",
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = call(&[
        "verify-laws",
        "--max-n",
        "6",
        "--alphabet",
        "3",
        "--negative-control",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(!v[0]["counterexamples"].as_array().unwrap().is_empty());
    let (code, _, _) = call(&["verify-symbreak", "--max-order", "8"]);
    assert_eq!(code, 0);
}

#[test]
fn oracle_compare_matches() {
    let (code, out, _) = call(&["oracle-compare", "--d", "1", "--e", "3", "--r", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "Match");
}

#[test]
fn family_e5() {
    let (code, out, _) = call(&["family", "--e", "5", "--u", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mult2_components"].as_array().unwrap().len(), 2);
    assert_eq!(call(&["family", "--e", "6", "--u", "4"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_reflect-branch");
    let ok = Command::new(bin)
        .args([
            "table", "--d", "1", "--e", "3", "--r", "2", "--format", "csv",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        ok.stdout,
        call(&["table", "--d", "1", "--e", "3", "--r", "2", "--format", "csv"])
            .1
            .into_bytes()
    );
    let bad = Command::new(bin)
        .args(["table", "--d", "0", "--e", "3", "--r", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
