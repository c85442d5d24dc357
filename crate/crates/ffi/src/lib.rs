//! C ABI over the `affinoid` library.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `_free` function. Every fallible call returns an
//! [`AffinoidStatus`]; on anything but `Ok` or `CheckFailed`,
//! [`affinoid_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use affinoid::groupoid::PolyGroupoid;
use affinoid::io::{self, FieldData};
use affinoid::report::Report;
use affinoid::suite::{self, SuiteConfig, Target};
use affinoid::{Error, Mode};

/// Outcome of an FFI call. Values match the CLI exit codes where they
/// overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffinoidStatus {
    Ok = 0,
    /// The call succeeded and produced a report with a failing check.
    CheckFailed = 1,
    /// Malformed JSON, unknown names, or shapes that do not fit.
    InvalidInput = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Opaque handle to a validated groupoid.
pub struct AffinoidGroupoid(Arc<PolyGroupoid>);

/// Opaque handle to a multivector field, form, tensor or algebroid section.
pub struct AffinoidField(FieldData);

/// Opaque handle to a check report.
pub struct AffinoidReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: AffinoidStatus, msg: impl Into<String>) -> AffinoidStatus {
    set_error(msg);
    status
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<AffinoidStatus, (AffinoidStatus, String)>) -> AffinoidStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(AffinoidStatus::Internal, "panic inside affinoid"),
    }
}

fn input(e: Error) -> (AffinoidStatus, String) {
    (AffinoidStatus::InvalidInput, e.to_string())
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (AffinoidStatus, String)> {
    if p.is_null() {
        return Err((AffinoidStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (AffinoidStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (AffinoidStatus, String)> {
    p.as_ref()
        .ok_or_else(|| (AffinoidStatus::NullPointer, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), (AffinoidStatus, String)> {
    if out.is_null() {
        return Err((AffinoidStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn config(seed: u64, sampled: bool, samples: usize) -> SuiteConfig {
    let samples = if samples == 0 {
        affinoid::DEFAULT_SAMPLES
    } else {
        samples
    };
    SuiteConfig {
        seed,
        mode: if sampled {
            Mode::Sampled { seed, samples }
        } else {
            Mode::Exact
        },
        samples,
    }
}

fn report_status(r: &Report) -> AffinoidStatus {
    if r.all_passed() {
        AffinoidStatus::Ok
    } else {
        AffinoidStatus::CheckFailed
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn affinoid_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn affinoid_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Loads a groupoid from `catalog:<id>` or a JSON file path.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn affinoid_groupoid_load(
    spec: *const c_char,
    out: *mut *mut AffinoidGroupoid,
) -> AffinoidStatus {
    guard(|| {
        let spec = text(spec, "spec")?;
        let gp = io::load_groupoid(spec).map_err(input)?;
        store(out, AffinoidGroupoid(gp))?;
        Ok(AffinoidStatus::Ok)
    })
}

/// Parses a groupoid from its JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn affinoid_groupoid_from_json(
    json: *const c_char,
    out: *mut *mut AffinoidGroupoid,
) -> AffinoidStatus {
    guard(|| {
        let gp = io::parse_groupoid(text(json, "json")?).map_err(input)?;
        store(out, AffinoidGroupoid(gp))?;
        Ok(AffinoidStatus::Ok)
    })
}

/// Dimension of the arrows, or 0 for a null handle.
///
/// # Safety
/// `gp` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn affinoid_groupoid_dim(gp: *const AffinoidGroupoid) -> usize {
    gp.as_ref().map_or(0, |g| g.0.dim_g())
}

/// # Safety
/// `gp` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn affinoid_groupoid_free(gp: *mut AffinoidGroupoid) {
    if !gp.is_null() {
        drop(Box::from_raw(gp));
    }
}

/// Parses a field document. The groupoid named in the document, if any, is
/// ignored; pass the groupoid to the check functions instead.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn affinoid_field_from_json(json: *const c_char, out: *mut *mut AffinoidField) -> AffinoidStatus {
    guard(|| {
        let doc = io::parse_field_doc(text(json, "json")?).map_err(input)?;
        store(out, AffinoidField(doc.field))?;
        Ok(AffinoidStatus::Ok)
    })
}

/// # Safety
/// `field` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn affinoid_field_free(field: *mut AffinoidField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Runs a named predicate (`affine-mv`, `isotropy`, ...) on a field.
/// Returns `Ok` or `CheckFailed` with the report stored in `out`; `samples`
/// of 0 selects the default.
///
/// # Safety
/// Handles must come from this library, `predicate` must be a
/// nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn affinoid_check_predicate(
    gp: *const AffinoidGroupoid,
    field: *const AffinoidField,
    predicate: *const c_char,
    seed: u64,
    sampled: bool,
    samples: usize,
    out: *mut *mut AffinoidReport,
) -> AffinoidStatus {
    guard(|| {
        let gp = handle(gp, "groupoid")?;
        let field = handle(field, "field")?;
        let name = text(predicate, "predicate")?;
        if field.0.tensor().nvars() != gp.0.dim_g() {
            return Err((
                AffinoidStatus::InvalidInput,
                "field does not live on the groupoid".into(),
            ));
        }
        let r = suite::run_predicate(&gp.0, name, &field.0, "field", &config(seed, sampled, samples)).map_err(input)?;
        let status = report_status(&r);
        store(out, AffinoidReport(r))?;
        Ok(status)
    })
}

/// Runs a named suite (`full`, `groupoid`, `mv`, `forms`, `tensors`) on one
/// groupoid, or on the whole catalog when `gp` is null.
///
/// # Safety
/// `gp` must be null or a handle from this library, `suite` a
/// nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn affinoid_run_suite(
    suite: *const c_char,
    gp: *const AffinoidGroupoid,
    seed: u64,
    sampled: bool,
    samples: usize,
    out: *mut *mut AffinoidReport,
) -> AffinoidStatus {
    guard(|| {
        let name = text(suite, "suite")?;
        let targets = match gp.as_ref() {
            Some(g) => vec![Target::custom(g.0.clone()).map_err(input)?],
            None => suite::catalog_targets().map_err(input)?,
        };
        let r = suite::run_suite(name, &targets, &config(seed, sampled, samples)).map_err(input)?;
        let status = report_status(&r);
        store(out, AffinoidReport(r))?;
        Ok(status)
    })
}

/// Whether every check in the report passed; false for a null handle.
///
/// # Safety
/// `report` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn affinoid_report_passed(report: *const AffinoidReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.all_passed())
}

/// Number of failing checks; 0 for a null handle.
///
/// # Safety
/// `report` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn affinoid_report_failed(report: *const AffinoidReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.failed)
}

/// The report as JSON. Free the string with [`affinoid_string_free`];
/// null for a null handle.
///
/// # Safety
/// `report` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn affinoid_report_json(report: *const AffinoidReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => CString::new(r.0.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error("report is null");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `report` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn affinoid_report_free(report: *mut AffinoidReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Exports a catalog groupoid (by id) or fixture (by name) as JSON into
/// `out`; free it with [`affinoid_string_free`].
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn affinoid_catalog_export(name: *const c_char, out: *mut *mut c_char) -> AffinoidStatus {
    guard(|| {
        let name = text(name, "name")?;
        if out.is_null() {
            return Err((AffinoidStatus::NullPointer, "output pointer is null".into()));
        }
        let json = affinoid::catalog::export(name).map_err(input)?;
        *out = CString::new(json).expect("json has no nul bytes").into_raw();
        Ok(AffinoidStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn affinoid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a field document from a JSON file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn affinoid_field_load(path: *const c_char, out: *mut *mut AffinoidField) -> AffinoidStatus {
    guard(|| {
        let path = text(path, "path")?;
        let body = io::read_file(Path::new(path)).map_err(input)?;
        let doc = io::parse_field_doc(&body).map_err(input)?;
        store(out, AffinoidField(doc.field))?;
        Ok(AffinoidStatus::Ok)
    })
}
