use std::process::{Command, Output};

use qzeta_core::{IntPolynomial, QSeries};

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta"))
        .args(args)
        .output()
        .expect("failed to run qzeta")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn poly_k2_prints_p_even() {
    let out = qzeta(&["poly", "--k", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1 + 4z + z^2"), "{text}");
    assert!(text.contains("-1 -7 -12 -6"), "{text}");
    assert!(!text.contains("P^o"));
}

#[test]
fn poly_k5_includes_odd_polynomial() {
    let out = qzeta(&["poly", "--k", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("502z + 14608z^2 + 88234z^3 + 156190z^4"),
        "{text}"
    );
    assert!(text.contains("P^o_18(z) = 1 + 19673z^2"), "{text}");
}

#[test]
fn poly_json_round_trips_polynomial() {
    let out = qzeta(&["poly", "--k", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let p = IntPolynomial::from_json(&v["p_even"].to_string()).unwrap();
    assert_eq!(p, IntPolynomial::from_i64(&[1, 26, 66, 26, 1]));
    assert!(!v["p_odd"].is_null());
    assert_eq!(v["a"][0], "-1");
}

#[test]
fn poly_rejects_k_zero() {
    let out = qzeta(&["poly", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_for_k2_and_k3() {
    for k in ["2", "3"] {
        let out = qzeta(&["verify", "--k", k, "--order", "400"]);
        assert!(out.status.success(), "k = {k}: {}", stdout(&out));
        assert!(stdout(&out).contains(": pass"));
    }
}

#[test]
fn verify_json_carries_t_series() {
    let out = qzeta(&["verify", "--k", "3", "--order", "40", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["t_parity"], "odd");
    let t = QSeries::from_json(&v["t_series"].to_string()).unwrap();
    assert_eq!(t.order(), 40);
    let odd: Vec<i64> = [1, 3, 5, 7, 9]
        .iter()
        .map(|&i| t.coeff(i).to_integer().try_into().unwrap())
        .collect();
    assert_eq!(odd, vec![1, -12, 54, -88, -99]);
}

#[test]
fn verify_without_k_runs_one_through_six() {
    let out = qzeta(&["verify", "--order", "60", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let ks: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ks, ["1", "2", "3", "4", "5", "6"]);
}

#[test]
fn verify_rejects_small_order() {
    let out = qzeta(&["verify", "--k", "4", "--order", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order"));
}

#[test]
fn count_fourk4_matches_sums_of_triangular_numbers() {
    let out = qzeta(&["count", "--fourk", "4", "--n-max", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let series: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(series, ["1", "4", "6", "8", "13"]);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn count_rejects_bad_fourk_and_small_order() {
    assert_eq!(qzeta(&["count", "--fourk", "6"]).status.code(), Some(2));
    assert_eq!(
        qzeta(&["count", "--k", "1", "--n-max", "10", "--order", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qzeta(&["count"]).status.code(), Some(2));
}

#[test]
fn limit_rejects_q_equal_one() {
    let out = qzeta(&["limit", "--k", "1", "--q-points", "0.5,1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn limit_csv_has_one_row_per_point() {
    let out = qzeta(&[
        "limit",
        "--k",
        "2",
        "--q-points",
        "0.9,0.99",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("q,lhs,target,rel_err"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn limit_qgamma_converges() {
    let out = qzeta(&["limit", "--k", "3", "--kind", "qgamma", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["converging"], true);
}

#[test]
fn bench_small_order_agrees() {
    let out = qzeta(&["bench", "--order", "64", "--k", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["digest"], rows[1]["digest"]);
}

#[test]
fn bench_rejects_tiny_order() {
    assert_eq!(qzeta(&["bench", "--order", "10"]).status.code(), Some(2));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poly.json");
    let out = qzeta(&[
        "poly",
        "--k",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["k"], 1);
}
