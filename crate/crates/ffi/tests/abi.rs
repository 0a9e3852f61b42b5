use std::ffi::{CStr, CString};
use std::ptr;

use unideform_ffi::*;

fn c(re: f64, im: f64) -> UdComplex {
    UdComplex { re, im }
}

fn zoo(spec: &str, order: usize) -> *mut UdFunction {
    let spec = CString::new(spec).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { ud_function_from_zoo(spec.as_ptr(), order, &mut f) }, UdStatus::Ok);
    f
}

fn coefficients(f: *const UdFunction) -> Vec<UdComplex> {
    let mut len = 0;
    assert_eq!(unsafe { ud_function_coefficients(f, ptr::null_mut(), 0, &mut len) }, UdStatus::BufferTooSmall);
    let mut buf = vec![c(0.0, 0.0); len];
    assert_eq!(unsafe { ud_function_coefficients(f, buf.as_mut_ptr(), len, &mut len) }, UdStatus::Ok);
    buf
}

fn last_error() -> Option<String> {
    let p = ud_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn koebe_coefficients_and_values() {
    let k = zoo("koebe", 32);
    assert_eq!(unsafe { ud_function_order(k) }, 32);
    let a = coefficients(k);
    assert_eq!(a.len(), 33);
    for (n, an) in a.iter().enumerate() {
        assert!((an.re - (n + 1) as f64).abs() < 1e-12 && an.im.abs() < 1e-12);
    }
    let z = num_complex::Complex64::new(0.3, -0.6);
    let mut v = c(0.0, 0.0);
    assert_eq!(unsafe { ud_function_eval(k, c(z.re, z.im), &mut v) }, UdStatus::Ok);
    let want = z / ((1.0 - z) * (1.0 - z));
    assert!((v.re - want.re).abs() < 1e-12 && (v.im - want.im).abs() < 1e-12);
    assert_eq!(unsafe { ud_function_ratio(k, c(z.re, z.im), &mut v) }, UdStatus::Ok);
    let want = (1.0 + z) / (1.0 - z);
    assert!((v.re - want.re).abs() < 1e-12 && (v.im - want.im).abs() < 1e-12);
    assert!(last_error().is_none());
    unsafe { ud_function_free(k) };
}

#[test]
fn deformations_of_koebe() {
    let k = zoo("koebe", 24);
    let ones = |f: *mut UdFunction| coefficients(f).iter().all(|a| (a.re - 1.0).abs() < 1e-12 && a.im.abs() < 1e-12);
    // the square root transform and the Alexander transform both give z/(1-z)
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ud_power_deform(k, c(0.5, 0.0), &mut g) }, UdStatus::Ok);
    assert!(ones(g));
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { ud_alexander(k, &mut a) }, UdStatus::Ok);
    assert!(ones(a));
    // J with c = 1 is the Alexander transform and I with c = 1 returns f
    let mut i1 = ptr::null_mut();
    assert_eq!(unsafe { ud_integral_i(g, c(1.0, 0.0), &mut i1) }, UdStatus::Ok);
    assert!(ones(i1));
    let mut j1 = ptr::null_mut();
    assert_eq!(unsafe { ud_integral_j(k, c(1.0, 0.0), &mut j1) }, UdStatus::Ok);
    assert!(ones(j1));
    unsafe {
        for f in [k, g, a, i1, j1] {
            ud_function_free(f);
        }
    }
}

#[test]
fn coefficient_and_json_constructors() {
    let raw = [c(1.0, 0.0), c(0.5, 0.25), c(-0.125, 0.0)];
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { ud_function_from_coefficients(raw.as_ptr(), raw.len(), &mut f) }, UdStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ud_function_to_json(f, &mut json) }, UdStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_owned();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ud_function_from_json(text.as_ptr(), &mut g) }, UdStatus::Ok);
    assert_eq!(coefficients(g), raw);
    unsafe {
        ud_string_free(json);
        ud_function_free(f);
        ud_function_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut f = ptr::null_mut();
    let bad = CString::new("koebe:3").unwrap();
    assert_eq!(unsafe { ud_function_from_zoo(bad.as_ptr(), 16, &mut f) }, UdStatus::Parse);
    assert!(last_error().unwrap().contains("koebe:3"));
    assert!(f.is_null());
    let bad = CString::new("starlike-order:1.5").unwrap();
    assert_eq!(unsafe { ud_function_from_zoo(bad.as_ptr(), 16, &mut f) }, UdStatus::InvalidParameter);
    assert_eq!(unsafe { ud_function_from_zoo(ptr::null(), 16, &mut f) }, UdStatus::NullPointer);
    let raw = [c(2.0, 0.0), c(1.0, 0.0)];
    assert_eq!(unsafe { ud_function_from_coefficients(raw.as_ptr(), 2, &mut f) }, UdStatus::NotNormalized);
    let junk = CString::new("{\"order\": 3}").unwrap();
    assert_eq!(unsafe { ud_function_from_json(junk.as_ptr(), &mut f) }, UdStatus::MalformedSeries);

    let k = zoo("koebe", 16);
    assert!(last_error().is_none());
    let mut v = c(0.0, 0.0);
    assert_eq!(unsafe { ud_function_eval(k, c(0.5, 0.0), ptr::null_mut()) }, UdStatus::NullPointer);
    assert_eq!(unsafe { ud_function_eval(ptr::null(), c(0.5, 0.0), &mut v) }, UdStatus::NullPointer);
    let mut len = 0;
    let mut small = [c(0.0, 0.0); 4];
    assert_eq!(unsafe { ud_function_coefficients(k, small.as_mut_ptr(), 4, &mut len) }, UdStatus::BufferTooSmall);
    assert_eq!(len, 17);
    unsafe { ud_function_free(k) };
    unsafe { ud_function_free(ptr::null_mut()) };
}

#[test]
fn class_regions() {
    let name = CString::new("S*").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { ud_region_for_class(name.as_ptr(), f64::NAN, f64::NAN, &mut r) }, UdStatus::Ok);
    let at = |w: UdComplex| {
        let mut v = UdContainment::Outside;
        assert_eq!(unsafe { ud_region_contains(r, w, 1e-9, &mut v) }, UdStatus::Ok);
        v
    };
    // the closed disk |c - 1/2| <= 1/2
    assert_eq!(at(c(0.5, 0.0)), UdContainment::Inside);
    assert_eq!(at(c(0.5, 0.4)), UdContainment::Inside);
    assert_eq!(at(c(1.0, 0.0)), UdContainment::Boundary);
    assert_eq!(at(c(0.0, 0.0)), UdContainment::Boundary);
    assert_eq!(at(c(0.5, 0.6)), UdContainment::Outside);
    let mut v = UdContainment::Inside;
    assert_eq!(unsafe { ud_region_contains(r, c(0.0, 0.0), f64::NAN, &mut v) }, UdStatus::InvalidParameter);
    unsafe { ud_region_free(r) };

    let name = CString::new("SS").unwrap();
    assert_eq!(unsafe { ud_region_for_class(name.as_ptr(), f64::NAN, f64::NAN, &mut r) }, UdStatus::Parse);
}

#[test]
fn version_is_the_crate_version() {
    assert_eq!(unsafe { CStr::from_ptr(ud_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
