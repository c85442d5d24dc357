use std::ffi::{CStr, CString};
use std::ptr;

use affinoid_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = affinoid_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn export(name: &str) -> CString {
    let mut out = ptr::null_mut();
    let status = unsafe { affinoid_catalog_export(c(name).as_ptr(), &mut out) };
    assert_eq!(status, AffinoidStatus::Ok);
    let s = unsafe { CStr::from_ptr(out) }.to_owned();
    unsafe { affinoid_string_free(out) };
    s
}

fn load(spec: &str) -> *mut AffinoidGroupoid {
    let mut gp = ptr::null_mut();
    assert_eq!(
        unsafe { affinoid_groupoid_load(c(spec).as_ptr(), &mut gp) },
        AffinoidStatus::Ok
    );
    gp
}

#[test]
fn predicate_round_trip() {
    let gp = load("catalog:abelian1");
    assert_eq!(unsafe { affinoid_groupoid_dim(gp) }, 1);
    for (name, want) in [
        ("abelian1/linear+constant", AffinoidStatus::Ok),
        ("abelian1/x2dx", AffinoidStatus::CheckFailed),
    ] {
        let mut field = ptr::null_mut();
        let json = export(name);
        assert_eq!(
            unsafe { affinoid_field_from_json(json.as_ptr(), &mut field) },
            AffinoidStatus::Ok
        );
        let mut report = ptr::null_mut();
        let status = unsafe { affinoid_check_predicate(gp, field, c("affine-mv").as_ptr(), 3, false, 0, &mut report) };
        assert_eq!(status, want, "{name}");
        assert_eq!(unsafe { affinoid_report_passed(report) }, want == AffinoidStatus::Ok);
        let text = unsafe { affinoid_report_json(report) };
        let body = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
        assert!(body.contains("\"seed\": 3"));
        unsafe {
            affinoid_string_free(text);
            affinoid_report_free(report);
            affinoid_field_free(field);
        }
    }
    unsafe { affinoid_groupoid_free(gp) };
}

#[test]
fn suite_on_a_groupoid() {
    let gp = load("catalog:pair1");
    let mut report = ptr::null_mut();
    let status = unsafe { affinoid_run_suite(c("full").as_ptr(), gp, 7, false, 0, &mut report) };
    assert_eq!(status, AffinoidStatus::Ok);
    assert_eq!(unsafe { affinoid_report_failed(report) }, 0);
    unsafe {
        affinoid_report_free(report);
        affinoid_groupoid_free(gp);
    }
}

#[test]
fn errors_are_reported() {
    let mut gp = ptr::null_mut();
    let status = unsafe { affinoid_groupoid_load(c("catalog:nowhere").as_ptr(), &mut gp) };
    assert_eq!(status, AffinoidStatus::InvalidInput);
    assert!(gp.is_null());
    assert!(last_error().contains("nowhere"));

    let status = unsafe { affinoid_groupoid_from_json(c("{\"dim_G\": 1").as_ptr(), &mut gp) };
    assert_eq!(status, AffinoidStatus::InvalidInput);

    let status = unsafe { affinoid_groupoid_load(ptr::null(), &mut gp) };
    assert_eq!(status, AffinoidStatus::NullPointer);

    let status = unsafe { affinoid_groupoid_load(c("catalog:pair1").as_ptr(), ptr::null_mut()) };
    assert_eq!(status, AffinoidStatus::NullPointer);

    let bad = [0xffu8, 0];
    let status = unsafe { affinoid_groupoid_load(bad.as_ptr().cast(), &mut gp) };
    assert_eq!(status, AffinoidStatus::InvalidUtf8);

    let gp = load("catalog:pair1");
    let mut report = ptr::null_mut();
    let status = unsafe { affinoid_run_suite(c("bogus").as_ptr(), gp, 0, false, 0, &mut report) };
    assert_eq!(status, AffinoidStatus::InvalidInput);
    assert!(report.is_null());
    unsafe { affinoid_groupoid_free(gp) };
}

#[test]
fn field_on_wrong_groupoid_is_rejected() {
    let gp = load("catalog:pair2");
    let json = export("abelian1/linear");
    let mut field = ptr::null_mut();
    assert_eq!(
        unsafe { affinoid_field_from_json(json.as_ptr(), &mut field) },
        AffinoidStatus::Ok
    );
    let mut report = ptr::null_mut();
    let status = unsafe { affinoid_check_predicate(gp, field, c("affine-mv").as_ptr(), 0, false, 0, &mut report) };
    assert_eq!(status, AffinoidStatus::InvalidInput);
    unsafe {
        affinoid_field_free(field);
        affinoid_groupoid_free(gp);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        affinoid_groupoid_free(ptr::null_mut());
        affinoid_field_free(ptr::null_mut());
        affinoid_report_free(ptr::null_mut());
        affinoid_string_free(ptr::null_mut());
        assert!(!affinoid_report_passed(ptr::null()));
        assert!(affinoid_report_json(ptr::null()).is_null());
    }
    let v = unsafe { CStr::from_ptr(affinoid_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
