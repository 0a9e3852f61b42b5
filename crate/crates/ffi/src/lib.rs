//! C ABI over `unideform`.
//!
//! Functions and regions are opaque handles created by `ud_*` constructors
//! and released with the matching `*_free`. Every fallible call returns a
//! [`UdStatus`]; on failure the message is available from
//! [`ud_last_error_message`] on the same thread. Output pointers are written
//! only on success.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use unideform::deform::{alexander, integral_deform_i, integral_deform_j, power_deform};
use unideform::region::{closed_form_exponent_region, ClassSpec, Containment, ExponentRegion};
use unideform::zoo::{make_named, ZooSpec};
use unideform::{AnalyticFunction, Complex64, Error, PowerSeries};

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameter = 4,
    NotNormalized = 5,
    OutsideRadius = 6,
    Numerical = 7,
    Unrepresentable = 8,
    MalformedSeries = 9,
    Io = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UdContainment {
    Inside = 0,
    Boundary = 1,
    Outside = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UdComplex {
    pub re: f64,
    pub im: f64,
}

impl From<UdComplex> for Complex64 {
    fn from(z: UdComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for UdComplex {
    fn from(z: Complex64) -> Self {
        UdComplex { re: z.re, im: z.im }
    }
}

/// A normalized analytic function `f(z) = z + a_2 z^2 + ...`.
pub struct UdFunction(AnalyticFunction);

/// Exponent region: a union of closed disks, segments and points.
pub struct UdRegion(ExponentRegion);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(UdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::NotNormalized { .. } => UdStatus::NotNormalized,
            Error::OutsideEvalRadius { .. } => UdStatus::OutsideRadius,
            Error::UnwrapJump { .. } | Error::ZeroValue(_) | Error::NonFinite(_) => UdStatus::Numerical,
            Error::InvalidParameter(_) => UdStatus::InvalidParameter,
            Error::Unrepresentable(_) => UdStatus::Unrepresentable,
            Error::MalformedSeries(_) | Error::Json(_) => UdStatus::MalformedSeries,
            Error::Parse { .. } => UdStatus::Parse,
            Error::Io { .. } => UdStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(UdStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> UdStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => (UdStatus::Ok, None),
        Ok(Err(Failure(status, msg))) => (status, Some(msg)),
        Err(_) => (UdStatus::Panic, Some("internal panic".to_string())),
    };
    set_error(msg);
    status
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(UdStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_function(out: *mut *mut UdFunction, f: AnalyticFunction) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(UdFunction(f))));
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ud_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL after a
/// successful one. Valid until the next `ud_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ud_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a named function such as `"koebe"` or `"strongly-spirallike:0.3,0.6"`
/// with its series truncated at `order`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_function_from_zoo(spec: *const c_char, order: usize, out: *mut *mut UdFunction) -> UdStatus {
    guard(|| {
        let spec: ZooSpec = text(spec, "spec")?.parse()?;
        if order == 0 {
            return Err(Failure(UdStatus::InvalidParameter, "order must be positive".into()));
        }
        put_function(out, make_named(&spec, order)?)
    })
}

/// Builds a function from its Taylor coefficients `a_1, ..., a_len` where
/// `a_1` must be 1.
///
/// # Safety
/// `coeffs` must point to `len` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_function_from_coefficients(
    coeffs: *const UdComplex,
    len: usize,
    out: *mut *mut UdFunction,
) -> UdStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        if len == 0 {
            return Err(Failure(UdStatus::InvalidParameter, "at least one coefficient is required".into()));
        }
        let h = std::slice::from_raw_parts(coeffs, len).iter().map(|&c| c.into()).collect();
        put_function(out, AnalyticFunction::new(PowerSeries::new(h)?, "series")?)
    })
}

/// Builds a function from the JSON document `{"order": N, "coeffs": [[re, im], ...]}`
/// holding the series of `f(z)/z`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_function_from_json(json: *const c_char, out: *mut *mut UdFunction) -> UdStatus {
    guard(|| {
        let h = PowerSeries::from_json(text(json, "json")?)?;
        put_function(out, AnalyticFunction::new(h, "series")?)
    })
}

/// # Safety
/// `f` must be NULL or a handle from this library that is not used again.
#[no_mangle]
pub unsafe extern "C" fn ud_function_free(f: *mut UdFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Power deformation `z (f(z)/z)^c`.
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_power_deform(f: *const UdFunction, c: UdComplex, out: *mut *mut UdFunction) -> UdStatus {
    guard(|| put_function(out, power_deform(&handle(f, "f")?.0, c.into())?))
}

/// Alexander transform: the integral of `f(t)/t` from 0 to `z`.
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_alexander(f: *const UdFunction, out: *mut *mut UdFunction) -> UdStatus {
    guard(|| put_function(out, alexander(&handle(f, "f")?.0)?))
}

/// Integral deformation: the integral of `f'(t)^c` from 0 to `z`.
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_integral_i(f: *const UdFunction, c: UdComplex, out: *mut *mut UdFunction) -> UdStatus {
    guard(|| put_function(out, integral_deform_i(&handle(f, "f")?.0, c.into())?))
}

/// Integral deformation: the integral of `(f(t)/t)^c` from 0 to `z`.
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_integral_j(f: *const UdFunction, c: UdComplex, out: *mut *mut UdFunction) -> UdStatus {
    guard(|| put_function(out, integral_deform_j(&handle(f, "f")?.0, c.into())?))
}

/// Truncation order of the stored series, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ud_function_order(f: *const UdFunction) -> usize {
    f.as_ref().map_or(0, |f| f.0.order())
}

/// Copies `a_1, ..., a_{order+1}` into `buf`. `*len` always receives the
/// count; `UD_STATUS_BUFFER_TOO_SMALL` is returned when `cap` is short, so a
/// first call with `cap = 0` sizes the buffer.
///
/// # Safety
/// `f` must be a live handle, `buf` must hold `cap` values (or be NULL when
/// `cap` is 0) and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_function_coefficients(
    f: *const UdFunction,
    buf: *mut UdComplex,
    cap: usize,
    len: *mut usize,
) -> UdStatus {
    guard(|| {
        let coeffs = handle(f, "f")?.0.h_series().coeffs();
        put(len, coeffs.len())?;
        if cap < coeffs.len() {
            return Err(Failure(UdStatus::BufferTooSmall, format!("{} coefficients, buffer holds {cap}", coeffs.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        for (k, &c) in coeffs.iter().enumerate() {
            buf.add(k).write(c.into());
        }
        Ok(())
    })
}

/// `f(z)` for `|z| < 1` (series-only functions stop at the evaluation radius).
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_function_eval(f: *const UdFunction, z: UdComplex, out: *mut UdComplex) -> UdStatus {
    guard(|| put(out, handle(f, "f")?.0.value_at(z.into())?.into()))
}

/// `z f'(z) / f(z)`.
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_function_ratio(f: *const UdFunction, z: UdComplex, out: *mut UdComplex) -> UdStatus {
    guard(|| put(out, handle(f, "f")?.0.ratio_at(z.into())?.into()))
}

/// Serializes the series of `f(z)/z`. Release the string with
/// [`ud_string_free`].
///
/// # Safety
/// `f` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_function_to_json(f: *const UdFunction, out: *mut *mut c_char) -> UdStatus {
    guard(|| {
        let json = CString::new(handle(f, "f")?.0.h_series().to_json()).expect("json has no nul");
        put(out, json.into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not used again.
#[no_mangle]
pub unsafe extern "C" fn ud_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exponent region of a class: `name` is one of `S`, `C`, `K`, `S*`, `SS`,
/// `Sp`; pass NaN for an absent `lambda` or `alpha`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_region_for_class(
    name: *const c_char,
    lambda: f64,
    alpha: f64,
    out: *mut *mut UdRegion,
) -> UdStatus {
    guard(|| {
        let given = |x: f64| (!x.is_nan()).then_some(x);
        let cls = ClassSpec::from_parts(text(name, "name")?, given(lambda), given(alpha))?;
        let region = closed_form_exponent_region(&cls)?;
        put(out, Box::into_raw(Box::new(UdRegion(region))))
    })
}

/// Classifies `c` with a boundary band of width `tol`.
///
/// # Safety
/// `region` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ud_region_contains(
    region: *const UdRegion,
    c: UdComplex,
    tol: f64,
    out: *mut UdContainment,
) -> UdStatus {
    guard(|| {
        if !(tol >= 0.0) {
            return Err(Failure(UdStatus::InvalidParameter, format!("tolerance must be non-negative, got {tol}")));
        }
        let verdict = match handle(region, "region")?.0.contains(c.into(), tol) {
            Containment::Inside => UdContainment::Inside,
            Containment::Boundary => UdContainment::Boundary,
            Containment::Outside => UdContainment::Outside,
        };
        put(out, verdict)
    })
}

/// # Safety
/// `region` must be NULL or a handle from this library that is not used again.
#[no_mangle]
pub unsafe extern "C" fn ud_region_free(region: *mut UdRegion) {
    if !region.is_null() {
        drop(Box::from_raw(region));
    }
}
