use std::process::Command;

fn qwb(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwb")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_all_json() {
    let (code, out, _) = qwb(&["verify", "--all", "--order", "150", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 42);
    assert_eq!(v["passed"], 42);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["conjectures_checked"], 11);
    for r in v["reports"].as_array().unwrap() {
        for key in ["id", "status", "order", "pass", "first_mismatch", "ms"] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn unknown_identity_is_usage_error() {
    let (code, _, err) = qwb(&["verify", "--id", "nosuch"]);
    assert_eq!(code, 2);
    assert!(err.contains("nosuch"));
}

#[test]
fn recognize_h_product() {
    let (code, out, _) = qwb(&["recognize", "--expr", "H", "--order", "120"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("(q^2, q^3; q^5)_inf^-1"));
}

#[test]
fn recognize_from_coefficient_file() {
    let (_, dump, _) = qwb(&["expand", "--expr", "K6_sum", "--order", "60"]);
    let path = std::env::temp_dir().join(format!("qwb-k6-{}.txt", std::process::id()));
    std::fs::write(&path, dump).unwrap();
    let (code, out, _) = qwb(&["recognize", "--coeffs", path.to_str().unwrap(), "--ring", "eis", "--order", "60"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert!(out.contains("# norm crosscheck ok"), "{out}");
}

#[test]
fn relation_rediscovers_modular_equation() {
    let (code, out, _) = qwb(&[
        "relation",
        "--expr",
        "G*poch(q^2;q^2)/poch(q^8;q^8)",
        "--expr",
        "q*H(-q^4)",
        "--expr",
        "G(q^16)",
        "--order",
        "120",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(1, -1, -1)");
}

#[test]
fn asympt_table() {
    let (code, out, _) = qwb(&["asympt", "--a", "1", "--order", "6", "--x", "0.1", "--prec", "50"]);
    assert_eq!(code, 0);
    assert!(out.contains("x^1: -1/24"), "{out}");
    assert!(out.contains("x | direct | expansion | error"));
}

#[test]
fn parse_errors_exit_two() {
    let (code, _, err) = qwb(&["expand", "--expr", "G(q^16"]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error at"));
}
