//! C ABI over the `alpha-harmonic` crate.
//!
//! Every fallible function returns an [`AhStatus`] and writes results through
//! out-pointers. On failure the message is available from
//! [`ah_last_error_message`] on the same thread until the next call. Strings
//! handed out by the library are released with [`ah_string_free`]; handles
//! with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use alpha_harmonic::calculus::{dbar, dtheta, dz, Derived, Target};
use alpha_harmonic::kernel::{g_alpha_eval, poisson_kernel};
use alpha_harmonic::norms::{default_grid, hardy_norm};
use alpha_harmonic::schwarz::{schwarz_check, Which};
use alpha_harmonic::verify::{run_suite, Suite, SweepSpec};
use alpha_harmonic::{
    AlphaHarmonicFunction, AlphaParam, BoundaryFunction, DiskPoint, Engine, Error, NormIndex,
};
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhStatus {
    Ok = 0,
    NullPointer = 1,
    /// Input outside the mathematical domain (α ≤ −1, |z| ≥ 1, p < 1, …).
    Domain = 2,
    NotApplicable = 3,
    InvalidArgument = 4,
    NonFinite = 5,
    Precondition = 6,
    Io = 7,
    Parse = 8,
    /// A Rust panic was caught at the boundary; the library state is intact.
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AhComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for AhComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<AhComplex> for Complex64 {
    fn from(z: AhComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AhDerivatives {
    pub dz: AhComplex,
    pub dbar: AhComplex,
    pub dtheta: AhComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhEngine {
    Series = 0,
    Quadrature = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhTarget {
    F = 0,
    Dz = 1,
    Dbar = 2,
    DbarScaled = 3,
    Dtheta = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhWhich {
    Lemma31 = 0,
    Lemma32 = 1,
    Thm33 = 2,
    Cor34 = 3,
}

/// Opaque boundary data (a trigonometric polynomial).
pub struct AhBoundary {
    inner: BoundaryFunction,
}

/// Opaque α-harmonic extension of boundary data.
pub struct AhFunction {
    inner: AlphaHarmonicFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> AhStatus {
    match e {
        Error::Domain(_) | Error::TooCloseToBoundary(_) | Error::StepUnderflow(_) => {
            AhStatus::Domain
        }
        Error::NotApplicable(_) => AhStatus::NotApplicable,
        Error::DegreeOverflow { .. }
        | Error::NotPowerOfTwo(_)
        | Error::TooFewSamples { .. }
        | Error::IllConditioned(_) => AhStatus::InvalidArgument,
        Error::NonFinite(_) => AhStatus::NonFinite,
        Error::Precondition(_) => AhStatus::Precondition,
        Error::Io(_) => AhStatus::Io,
        Error::Parse(_) => AhStatus::Parse,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard<F>(body: F) -> AhStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => AhStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed for {what}"));
            AhStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            AhStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure::Lib(Error::Parse(format!("{what} is not UTF-8: {e}"))))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("JSON has no interior nul")
        .into_raw()
}

fn point(z: AhComplex) -> Result<DiskPoint, Failure> {
    Ok(DiskPoint::new(z.into())?)
}

fn norm_index(p: f64) -> Result<NormIndex, Failure> {
    if p == f64::INFINITY {
        Ok(NormIndex::INFINITY)
    } else {
        Ok(NormIndex::new(p)?)
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ah_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ah_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ah_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Boundary data from `len` coefficients c_n = re[i] + i·im[i] at n = ns[i].
///
/// # Safety
/// The three arrays must hold `len` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_boundary_from_coeffs(
    ns: *const i64,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut AhBoundary,
) -> AhStatus {
    guard(|| {
        let (ns, re, im) = if len == 0 {
            (&[][..], &[][..], &[][..])
        } else {
            if ns.is_null() || re.is_null() || im.is_null() {
                return Err(Failure::Null("coefficient arrays"));
            }
            (
                std::slice::from_raw_parts(ns, len),
                std::slice::from_raw_parts(re, len),
                std::slice::from_raw_parts(im, len),
            )
        };
        let b =
            BoundaryFunction::from_coeffs((0..len).map(|i| (ns[i], Complex64::new(re[i], im[i]))))?;
        write(out, Box::into_raw(Box::new(AhBoundary { inner: b })), "out")
    })
}

/// Boundary data from the JSON file schema `{"coeffs": [{"n", "re", "im"}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_boundary_from_json(
    json: *const c_char,
    out: *mut *mut AhBoundary,
) -> AhStatus {
    guard(|| {
        let b = BoundaryFunction::from_json_str(read_str(json, "json")?)?;
        write(out, Box::into_raw(Box::new(AhBoundary { inner: b })), "out")
    })
}

/// Seeded random trigonometric polynomial of the given degree.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_boundary_random(
    seed: u64,
    degree: usize,
    out: *mut *mut AhBoundary,
) -> AhStatus {
    guard(|| {
        let b = BoundaryFunction::random(seed, degree)?;
        write(out, Box::into_raw(Box::new(AhBoundary { inner: b })), "out")
    })
}

/// # Safety
/// `b` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ah_boundary_free(b: *mut AhBoundary) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_boundary_degree(b: *const AhBoundary, out: *mut usize) -> AhStatus {
    guard(|| write(out, borrow(b, "boundary")?.inner.degree(), "out"))
}

/// ‖F‖_p on the circle; pass `INFINITY` for the sup norm.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_boundary_lp_norm(
    b: *const AhBoundary,
    p: f64,
    out: *mut f64,
) -> AhStatus {
    guard(|| {
        let b = borrow(b, "boundary")?;
        write(out, b.inner.lp_norm(norm_index(p)?), "out")
    })
}

/// c_α = Γ(α+1)/Γ(α/2+1)².
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_c_alpha(alpha: f64, out: *mut f64) -> AhStatus {
    guard(|| write(out, AlphaParam::new(alpha)?.c_alpha(), "out"))
}

/// P_α(z).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_poisson_kernel(
    alpha: f64,
    z: AhComplex,
    out: *mut AhComplex,
) -> AhStatus {
    guard(|| {
        let v = poisson_kernel(AlphaParam::new(alpha)?, point(z)?);
        write(out, v.into(), "out")
    })
}

/// g_α(z), so that P_α = g_α·P.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_g_alpha(alpha: f64, z: AhComplex, out: *mut AhComplex) -> AhStatus {
    guard(|| {
        let v = g_alpha_eval(AlphaParam::new(alpha)?, point(z)?);
        write(out, v.into(), "out")
    })
}

/// The extension P_α[F]; the boundary is copied, so `b` may be freed after.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_function_new(
    alpha: f64,
    b: *const AhBoundary,
    engine: AhEngine,
    out: *mut *mut AhFunction,
) -> AhStatus {
    guard(|| {
        let b = borrow(b, "boundary")?;
        let engine = match engine {
            AhEngine::Series => Engine::Series,
            AhEngine::Quadrature => Engine::Quadrature,
        };
        let f = AlphaHarmonicFunction::new(AlphaParam::new(alpha)?, b.inner.clone())
            .with_engine(engine);
        write(out, Box::into_raw(Box::new(AhFunction { inner: f })), "out")
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ah_function_free(f: *mut AhFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// f(z).
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_function_extend(
    f: *const AhFunction,
    z: AhComplex,
    out: *mut AhComplex,
) -> AhStatus {
    guard(|| {
        let v = borrow(f, "function")?.inner.extend(point(z)?)?;
        write(out, v.into(), "out")
    })
}

/// ∂f, ∂̄f and ∂_θf at z.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_function_derivatives(
    f: *const AhFunction,
    z: AhComplex,
    out: *mut AhDerivatives,
) -> AhStatus {
    guard(|| {
        let f = &borrow(f, "function")?.inner;
        let p = point(z)?;
        let d = AhDerivatives {
            dz: dz(f, p)?.into(),
            dbar: dbar(f, p)?.into(),
            dtheta: dtheta(f, p)?.into(),
        };
        write(out, d, "out")
    })
}

/// Integral means of f or a derivative on the dyadic radial grid, as a JSON
/// report. Free the string with [`ah_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_hardy_norm_json(
    f: *const AhFunction,
    target: AhTarget,
    p: f64,
    out_json: *mut *mut c_char,
) -> AhStatus {
    guard(|| {
        let f = &borrow(f, "function")?.inner;
        let target = match target {
            AhTarget::F => Target::F,
            AhTarget::Dz => Target::Dz,
            AhTarget::Dbar => Target::Dbar,
            AhTarget::DbarScaled => Target::DbarScaled,
            AhTarget::Dtheta => Target::Dtheta,
        };
        let rep = hardy_norm(
            &Derived::new(f, target),
            norm_index(p)?,
            &default_grid(),
            4096,
        )?;
        if out_json.is_null() {
            return Err(Failure::Null("out_json"));
        }
        out_json.write(into_c_string(rep.to_json()));
        Ok(())
    })
}

/// Both sides of one Schwarz-type bound at z.
///
/// # Safety
/// `f` must be a live handle; `lhs` and `rhs` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_schwarz_check(
    f: *const AhFunction,
    z: AhComplex,
    which: AhWhich,
    lhs: *mut f64,
    rhs: *mut f64,
) -> AhStatus {
    guard(|| {
        let f = &borrow(f, "function")?.inner;
        let which = match which {
            AhWhich::Lemma31 => Which::Lemma31,
            AhWhich::Lemma32 => Which::Lemma32,
            AhWhich::Thm33 => Which::Thm33,
            AhWhich::Cor34 => Which::Cor34,
        };
        let e = schwarz_check(f, point(z)?, which)?;
        write(lhs, e.lhs, "lhs")?;
        write(rhs, e.rhs, "rhs")
    })
}

/// Runs a verification suite by name ("thm21", …, "alpha0"). `sweep_json` may
/// be NULL for the defaults. A failed suite still returns `AH_STATUS_OK`;
/// check `out_pass`.
///
/// # Safety
/// `suite` (and `sweep_json` when non-NULL) must be NUL-terminated strings;
/// `out_json` and `out_pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ah_verify_json(
    suite: *const c_char,
    sweep_json: *const c_char,
    out_json: *mut *mut c_char,
    out_pass: *mut bool,
) -> AhStatus {
    guard(|| {
        let suite: Suite = read_str(suite, "suite")?.parse()?;
        let spec = if sweep_json.is_null() {
            SweepSpec::default()
        } else {
            SweepSpec::from_json_str(read_str(sweep_json, "sweep_json")?)?
        };
        if out_json.is_null() {
            return Err(Failure::Null("out_json"));
        }
        let rep = run_suite(suite, &spec)?;
        write(out_pass, rep.pass, "out_pass")?;
        out_json.write(into_c_string(rep.to_json()));
        Ok(())
    })
}
