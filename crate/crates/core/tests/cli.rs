use std::process::{Command, Output};

use serde_json::Value;

fn minext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn census_f2_x4() {
    let rows = json(&minext(&["census", "--q", "2", "--n", "4"]));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let total: u64 = rows.iter().map(|r| r["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 6);
    for r in rows {
        assert!(r["count"].as_u64().unwrap() as u128 <= r["bound"].as_u64().unwrap() as u128);
        assert!(r.get("subrings").is_none());
    }
}

#[test]
fn census_methods_and_bases() {
    let a = minext(&[
        "census",
        "--q",
        "3",
        "--n",
        "4",
        "--emit-bases",
        "--method",
        "subspace-scan",
    ]);
    let b = minext(&[
        "census",
        "--q",
        "3",
        "--n",
        "4",
        "--emit-bases",
        "--method",
        "closure-bfs",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let rows = json(&a);
    assert_eq!(rows[0]["subrings"], serde_json::json!([["1"]]));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "census-z",
        "--p",
        "2",
        "--N",
        "2",
        "--n",
        "3",
        "--k",
        "1",
        "--emit-bases",
    ];
    let first = minext(&args);
    assert!(first.status.success());
    for _ in 0..3 {
        assert_eq!(minext(&args).stdout, first.stdout);
    }
}

#[test]
fn csv_and_out_file() {
    let path = std::env::temp_dir().join(format!("minext-cli-{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = minext(&[
        "census", "--q", "2", "--n", "4", "--format", "csv", "--out", path_str,
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let mut lines = body.lines();
    assert_eq!(
        lines.next(),
        Some("shape,count,bound_exp,bound,equality,d_shape")
    );
    assert!(lines.any(|l| l == "\"[0,2]\",2,1,2,true,1"));
}

#[test]
fn counterexample_a6() {
    let rep = json(&minext(&["counterexample", "--a", "6", "--q", "2"]));
    assert_eq!(rep["d_ring"], 3);
    assert_eq!(rep["d_shape"], 4);
    assert_eq!(rep["minimal_generators"], serde_json::json!([6, 7, 8, 17]));
    assert_eq!(rep["witness_holds"], true);
}

#[test]
fn counterexample_over_extension_field() {
    let rep = json(&minext(&[
        "counterexample",
        "--a",
        "6",
        "--q",
        "4",
        "--modulus",
        "1+x+x^2",
    ]));
    assert_eq!(rep["gap_holds"], true);
}

#[test]
fn lifts_of_x2() {
    let rep = json(&minext(&[
        "lifts",
        "--q",
        "2",
        "--n",
        "3",
        "--subring",
        "x^2",
    ]));
    assert_eq!(rep["exists"], true);
    assert_eq!(rep["count"], 2);
    assert_eq!(
        rep["lifts"],
        serde_json::json!([["1", "x^2"], ["1", "x^2+x^3"]])
    );
    assert_eq!(rep["kernel_generator"], "x^3");

    let rep = json(&minext(&[
        "lifts",
        "--q",
        "2",
        "--n",
        "3",
        "--subring",
        "x",
    ]));
    assert_eq!(rep["exists"], false);
    assert_eq!(rep["kernel_in_small"], true);
}

#[test]
fn shape_report() {
    let rep = json(&minext(&[
        "shape",
        "--q",
        "2",
        "--n",
        "18",
        "--subring",
        "x^6+x^9; x^7; x^8",
    ]));
    assert_eq!(
        rep["exponent_set"],
        serde_json::json!([0, 6, 7, 8, 12, 13, 14, 15, 16, 17])
    );
    assert_eq!(rep["minimal_generators"], serde_json::json!([6, 7, 8, 17]));
    assert_eq!(rep["d_shape"], 4);
    assert_eq!(rep["d_ring"], 3);

    let rep = json(&minext(&[
        "shape",
        "--p",
        "2",
        "--N",
        "2",
        "--n",
        "2",
        "--subring",
        "2x",
    ]));
    assert_eq!(
        rep["exponent_set"],
        serde_json::json!([[0, 0], [0, 1], [1, 1]])
    );
    assert_eq!(rep["d_ring"], 1);
}

#[test]
fn verify_passes_on_f2_x5() {
    let out = minext(&["verify", "--suite", "all", "--q", "2", "--n", "5"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["violations"], serde_json::json!([]));
}

#[test]
fn verify_reports_counting_step_failure() {
    // Both members of this shape class gain a cotangent dimension, yet their
    // fibres have sizes 4 and 2.
    let out = minext(&[
        "verify", "--suite", "lifts", "--p", "2", "--N", "2", "--n", "3", "--k", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("counting_step"), "{stderr}");
    assert!(stderr.contains("6 subrings one step up"), "{stderr}");
}

#[test]
fn usage_errors() {
    for args in [
        &[][..],
        &["census", "--n", "3"],
        &["census", "--q", "6", "--n", "3"],
        &["counterexample", "--a", "3", "--q", "2"],
        &["verify", "--suite", "nope", "--q", "2", "--n", "3"],
        &["lifts", "--q", "2", "--n", "3", "--subring", "y"],
    ] {
        let out = minext(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
