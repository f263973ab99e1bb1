use std::path::Path;
use std::process::{Command, Output};

use alpha_harmonic::verify::VerifyReport;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_alpha-harmonic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn write_boundary(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn kernel_at_half() {
    let out = run(&["kernel", "--alpha", "1", "--z", "0.5,0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["P_alpha"].as_f64().unwrap(), 4.5);
    assert_eq!(v["P_alpha_im"].as_f64().unwrap(), 0.0);
    assert_eq!(v["g_alpha"].as_f64().unwrap(), 1.5);
}

#[test]
fn constants_are_reproduced() {
    let dir = TempDir::new().unwrap();
    let b = write_boundary(
        dir.path(),
        "const1.json",
        r#"{"coeffs": [{"n": 0, "re": 1.0, "im": 0.0}]}"#,
    );
    for engine in ["series", "quad"] {
        let out = run(&[
            "extend",
            "--alpha",
            "2",
            "--boundary",
            &b,
            "--z",
            "0.3,0.4",
            "--engine",
            engine,
        ]);
        assert!(out.status.success());
        let v = json(&out);
        assert!((v["f"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!(v["f_im"].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn deriv_reports_residuals() {
    let out = run(&["deriv", "--alpha", "-0.5", "--seed", "4", "--z", "0.2,-0.3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["identity_residual"].as_f64().unwrap() < 1e-8);
    assert!(v["laplacian_residual"].as_f64().unwrap() < 1e-6);
    for key in ["dz", "dz_im", "dbar", "dbar_im", "dtheta", "dtheta_im"] {
        assert!(v[key].is_f64(), "{key}");
    }
    // no room for the stencil: the residual is reported as null
    let near = json(&run(&[
        "deriv", "--alpha", "1", "--seed", "4", "--z", "0.999,0",
    ]));
    assert!(near["laplacian_residual"].is_null());
}

#[test]
fn norms_report_and_csv() {
    let dir = TempDir::new().unwrap();
    let b = write_boundary(
        dir.path(),
        "z.json",
        r#"{"coeffs": [{"n": 1, "re": 1.0, "im": 0.0}]}"#,
    );
    let out = run(&["norms", "--alpha", "1", "--boundary", &b, "--p", "inf"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["p"], "inf");
    assert_eq!(v["verdict"], "bounded");
    let csv = run(&[
        "norms",
        "--alpha",
        "1",
        "--boundary",
        &b,
        "--p",
        "2",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("r,M_p\n"));
    assert_eq!(text.lines().count(), 15);
}

#[test]
fn expand_lists_both_series() {
    let dir = TempDir::new().unwrap();
    let b = write_boundary(
        dir.path(),
        "b.json",
        r#"{"coeffs": [{"n": -2, "re": 2.0, "im": 0.0}, {"n": 3, "re": 0.0, "im": 1.0}]}"#,
    );
    let v = json(&run(&[
        "expand",
        "--alpha",
        "0.5",
        "--boundary",
        &b,
        "--order",
        "3",
    ]));
    assert_eq!(v["a"].as_array().unwrap().len(), 7);
    let h = v["h_alpha"].as_array().unwrap();
    assert_eq!(h.len(), 4);
    // (1/2)_2 / 2! = 3/8
    assert!((h[2]["re"].as_f64().unwrap() - 0.75).abs() < 1e-15);
}

#[test]
fn schwarz_over_standard_points() {
    let out = run(&["schwarz", "--alpha", "1", "--seed", "2", "--which", "thm33"]);
    // a raw random boundary may exceed sup |F| ≤ 1; either it runs or it refuses
    if out.status.success() {
        assert_eq!(json(&out)["violated"], false);
    } else {
        assert_eq!(out.status.code(), Some(1));
    }
    let dir = TempDir::new().unwrap();
    let b = write_boundary(
        dir.path(),
        "s.json",
        r#"{"coeffs": [{"n": -1, "re": 0.5, "im": 0.0}, {"n": 2, "re": 0.0, "im": 0.4}]}"#,
    );
    for which in ["lemma31", "lemma32", "thm33", "cor34"] {
        let out = run(&[
            "schwarz",
            "--alpha",
            "1.5",
            "--boundary",
            &b,
            "--which",
            which,
        ]);
        assert!(out.status.success(), "{which}");
        assert_eq!(json(&out)["violated"], false);
    }
    let origin = json(&run(&[
        "schwarz",
        "--alpha",
        "1",
        "--boundary",
        &b,
        "--which",
        "thm33",
        "--z",
        "0,0",
    ]));
    assert_eq!(origin["lhs"].as_f64().unwrap(), 0.0);
    assert_eq!(origin["rhs"].as_f64().unwrap(), 0.0);
}

#[test]
fn verify_thm21_passes_and_is_byte_identical() {
    let a = run(&["verify", "--suite", "thm21", "--alpha", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["pass"], true);
    let b = run(&["verify", "--suite", "thm21", "--alpha", "2", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_failure_exits_three() {
    let dir = TempDir::new().unwrap();
    // near p = −1/α the area norm only settles far out; a grid stopping at
    // j = 14 is still pre-asymptotic and the convergence probe fails
    let sweep = write_boundary(
        dir.path(),
        "sweep.json",
        r#"{"alphas": [-0.2], "ps": [4], "seed": 7, "seeds": 1, "area_depth": 14}"#,
    );
    let out = run(&["verify", "--suite", "thm26", "--sweep", &sweep]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    let worst = v["worst"].as_u64().unwrap() as usize;
    assert_eq!(v["cases"][worst]["ok"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed"));
}

#[test]
fn output_file_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--suite",
        "alpha0",
        "--seed",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: VerifyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json() + "\n", text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["params"]["seed"], 3);
    assert!(v["tolerance"]["absolute"].is_f64());
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["kernel", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["kernel", "--alpha", "1", "--z", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["kernel", "--alpha", "-1", "--z", "0,0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["kernel", "--alpha", "1", "--z", "0.6,0.8"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["extend", "--alpha", "1", "--z", "0,0"]).status.code(),
        Some(1)
    );
    let dir = TempDir::new().unwrap();
    let bad = write_boundary(
        dir.path(),
        "bad.json",
        r#"{"coeffs": [{"n": 1, "re": 1.0}]}"#,
    );
    assert_eq!(
        run(&["extend", "--boundary", &bad, "--z", "0,0"])
            .status
            .code(),
        Some(1)
    );
    let sweep = write_boundary(dir.path(), "sweep.json", r#"{"ps": [0.5]}"#);
    assert_eq!(
        run(&["verify", "--suite", "thm21", "--sweep", &sweep])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "--suite", "thm21", "--alpha", "-1.5"])
            .status
            .code(),
        Some(1)
    );
}
