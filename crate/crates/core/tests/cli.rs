use std::process::Command;

use serde_json::Value;

fn vsa(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_vsa")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = vsa(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn heisenberg_dimensions() {
    let (code, r) = json(&["dims", "--algebra", "heisenberg-k1", "--up-to", "8"]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = r["results"]["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
    assert_eq!(r["command"], "dims");
    assert_eq!(r["violations"], Value::Array(vec![]));
}

#[test]
fn ns_jacobi_is_clean() {
    let (code, r) = json(&["check", "jacobi", "--algebra", "ns-1/2", "--max-weight", "3", "--window", "3"]);
    assert_eq!(code, 0);
    assert!(r["violations"].as_array().unwrap().is_empty());
}

#[test]
fn sweedler_is_not_cocommutative() {
    let (code, r) = json(&["hopf", "cocomm", "--hopf", "hopf-sweedler"]);
    assert_eq!(code, 1);
    assert!(r.to_string().contains("\"x\""), "{r}");
}

#[test]
fn product_of_boson_with_itself() {
    let (code, r) = json(&[
        "product", "--algebra", "heisenberg-k1", "--u", "x(-1).1", "--n", "1", "--v", "x(-1).1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["formatted"], "1");
}

#[test]
fn input_errors_exit_with_two() {
    let bad_file = std::env::temp_dir().join("vsa-cli-malformed.json");
    std::fs::write(&bad_file, "{ not json").unwrap();
    let cases: [Vec<&str>; 4] = [
        vec!["dims", "--algebra", "no-such-algebra", "--up-to", "2"],
        vec!["dims", "--algebra", bad_file.to_str().unwrap(), "--up-to", "2"],
        vec!["dims", "--algebra", "heisenberg-k1", "--up-to", "1/2"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let (code, r) = json(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(r["results"]["error"].is_string(), "{args:?}");
    }
}

#[test]
fn fixtures_are_listed() {
    let (code, r) = json(&["fixtures", "list"]);
    assert_eq!(code, 0);
    let text = r.to_string();
    for name in ["heisenberg-k1", "ns-1/2", "hopf-sweedler", "sigma-ns-1/2"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &["dims", "--algebra", "tensor(heisenberg-k1,ns-1/2)", "--up-to", "3"],
        &["check", "skew", "--algebra", "affine-sl2", "--max-weight", "2", "--sample", "20", "--seed", "7"],
        &["injectivity", "--algebra", "freediff-(1|1)", "--cutoff", "1", "--emit-kernel"],
        &["hopf", "grouplikes", "--hopf", "hopf-z3"],
    ];
    for args in runs {
        let a = vsa(args);
        let b = vsa(args);
        assert_eq!(a, b, "{args:?}");
        assert_ne!(a.0, 2, "{args:?}: {}", a.1);
    }
}

#[test]
fn indentation_flag_controls_layout() {
    let (_, compact) = vsa(&["--json-indent", "0", "dims", "--algebra", "heisenberg-k1", "--up-to", "2"]);
    let (_, wide) = vsa(&["--json-indent", "4", "dims", "--algebra", "heisenberg-k1", "--up-to", "2"]);
    assert_eq!(compact.trim().lines().count(), 1);
    assert!(wide.contains("\n    \""));
    let a: Value = serde_json::from_str(&compact).unwrap();
    let b: Value = serde_json::from_str(&wide).unwrap();
    assert_eq!(a, b);
}
