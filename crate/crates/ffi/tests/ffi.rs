use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use alpha_harmonic_ffi::*;

fn last_error() -> String {
    let p = ah_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn c(re: f64, im: f64) -> AhComplex {
    AhComplex { re, im }
}

#[test]
fn kernel_values_and_domain_errors() {
    let mut out = c(0.0, 0.0);
    unsafe {
        assert_eq!(ah_poisson_kernel(1.0, c(0.5, 0.0), &mut out), AhStatus::Ok);
        assert_eq!(out, c(4.5, 0.0));
        assert_eq!(ah_g_alpha(1.0, c(0.5, 0.0), &mut out), AhStatus::Ok);
        assert_eq!(out, c(1.5, 0.0));
        assert_eq!(
            ah_poisson_kernel(-1.0, c(0.0, 0.0), &mut out),
            AhStatus::Domain
        );
        assert!(last_error().contains("alpha"));
        assert_eq!(
            ah_poisson_kernel(1.0, c(0.0, 0.0), ptr::null_mut()),
            AhStatus::NullPointer
        );
        let mut ca = 0.0;
        assert_eq!(ah_c_alpha(2.0, &mut ca), AhStatus::Ok);
        assert!((ca - 2.0).abs() < 1e-14);
    }
}

#[test]
fn boundary_and_function_lifecycle() {
    unsafe {
        let mut b: *mut AhBoundary = ptr::null_mut();
        assert_eq!(ah_boundary_random(5, 8, &mut b), AhStatus::Ok);
        let mut degree = 0usize;
        assert_eq!(ah_boundary_degree(b, &mut degree), AhStatus::Ok);
        assert_eq!(degree, 8);
        let (mut n2, mut ninf) = (0.0, 0.0);
        assert_eq!(ah_boundary_lp_norm(b, 2.0, &mut n2), AhStatus::Ok);
        assert_eq!(
            ah_boundary_lp_norm(b, f64::INFINITY, &mut ninf),
            AhStatus::Ok
        );
        assert!(n2 <= ninf);
        assert_eq!(ah_boundary_lp_norm(b, 0.5, &mut n2), AhStatus::Domain);

        let mut f: *mut AhFunction = ptr::null_mut();
        assert_eq!(
            ah_function_new(-0.5, b, AhEngine::Series, &mut f),
            AhStatus::Ok
        );
        let mut g: *mut AhFunction = ptr::null_mut();
        assert_eq!(
            ah_function_new(-0.5, b, AhEngine::Quadrature, &mut g),
            AhStatus::Ok
        );
        ah_boundary_free(b);

        let z = c(0.3, -0.45);
        let (mut u, mut v) = (c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(ah_function_extend(f, z, &mut u), AhStatus::Ok);
        assert_eq!(ah_function_extend(g, z, &mut v), AhStatus::Ok);
        assert!((u.re - v.re).abs() < 1e-10 && (u.im - v.im).abs() < 1e-10);

        let mut d = AhDerivatives {
            dz: c(0.0, 0.0),
            dbar: c(0.0, 0.0),
            dtheta: c(0.0, 0.0),
        };
        assert_eq!(ah_function_derivatives(f, z, &mut d), AhStatus::Ok);
        // ∂_θ = i(z∂ − z̄∂̄)
        let (zr, zi) = (z.re, z.im);
        let w_re = zr * d.dz.re - zi * d.dz.im - (zr * d.dbar.re + zi * d.dbar.im);
        let w_im = zr * d.dz.im + zi * d.dz.re - (zr * d.dbar.im - zi * d.dbar.re);
        assert!((d.dtheta.re + w_im).abs() < 1e-8 && (d.dtheta.im - w_re).abs() < 1e-8);

        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            ah_hardy_norm_json(f, AhTarget::Dbar, 1.0, &mut json),
            AhStatus::Ok
        );
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        ah_string_free(json);
        assert!(text.contains("\"verdict\": \"growing\""), "{text}");

        let (mut lhs, mut rhs) = (0.0, 0.0);
        let s = ah_schwarz_check(f, z, AhWhich::Cor34, &mut lhs, &mut rhs);
        // refused either for sup |F| > 1 or for α ≤ 0
        assert!(
            matches!(s, AhStatus::Precondition | AhStatus::Domain),
            "{s:?}"
        );
        ah_function_free(f);
        ah_function_free(g);
        ah_function_free(ptr::null_mut());
    }
}

#[test]
fn schwarz_and_json_boundaries() {
    let json = CString::new(
        r#"{"coeffs": [{"n": -1, "re": 0.5, "im": 0.0}, {"n": 2, "re": 0.0, "im": 0.4}]}"#,
    )
    .unwrap();
    unsafe {
        let mut b: *mut AhBoundary = ptr::null_mut();
        assert_eq!(ah_boundary_from_json(json.as_ptr(), &mut b), AhStatus::Ok);
        let mut f: *mut AhFunction = ptr::null_mut();
        assert_eq!(
            ah_function_new(1.0, b, AhEngine::Series, &mut f),
            AhStatus::Ok
        );
        for which in [
            AhWhich::Lemma31,
            AhWhich::Lemma32,
            AhWhich::Thm33,
            AhWhich::Cor34,
        ] {
            let (mut lhs, mut rhs) = (0.0, 0.0);
            assert_eq!(
                ah_schwarz_check(f, c(0.4, 0.2), which, &mut lhs, &mut rhs),
                AhStatus::Ok
            );
            assert!(lhs <= rhs + 1e-9, "{which:?}");
        }
        ah_function_free(f);
        ah_boundary_free(b);

        let bad = CString::new(r#"{"coeffs": [{"n": 1}]}"#).unwrap();
        assert_eq!(ah_boundary_from_json(bad.as_ptr(), &mut b), AhStatus::Parse);
        assert_eq!(
            ah_boundary_from_json(ptr::null(), &mut b),
            AhStatus::NullPointer
        );
        let (ns, re, im) = ([2000i64], [1.0], [0.0]);
        assert_eq!(
            ah_boundary_from_coeffs(ns.as_ptr(), re.as_ptr(), im.as_ptr(), 1, &mut b),
            AhStatus::InvalidArgument
        );
    }
}

#[test]
fn verify_through_the_abi() {
    let suite = CString::new("thm21").unwrap();
    let sweep = CString::new(r#"{"alphas": [2.0], "seeds": 2}"#).unwrap();
    unsafe {
        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        let mut pass = false;
        assert_eq!(
            ah_verify_json(suite.as_ptr(), sweep.as_ptr(), &mut json, &mut pass),
            AhStatus::Ok
        );
        assert!(pass);
        let report: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        ah_string_free(json);
        assert_eq!(report["suite"], "thm21");
        assert_eq!(report["cases"].as_array().unwrap().len(), 10);

        let invalid = CString::new(r#"{"alphas": [-2.0]}"#).unwrap();
        assert_eq!(
            ah_verify_json(suite.as_ptr(), invalid.as_ptr(), &mut json, &mut pass),
            AhStatus::Domain
        );
    }
}

fn profile_dir() -> PathBuf {
    // target/<profile>/deps/ffi-<hash> → target/<profile>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let lib = profile_dir().join("libalpha_harmonic_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
