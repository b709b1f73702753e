//! C ABI over the almost-circles library.
//!
//! Every function returns an [`AcStatus`]; results go through out-pointers.
//! On failure [`ac_last_error_message`] describes the most recent error on the
//! calling thread. Strings returned by the library are freed with
//! [`ac_string_free`], handles with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use almost_circles::certificate::{self, Certificate, RepresentOptions, DEFAULT_FAMILY_ID};
use almost_circles::cli::load_geometry;
use almost_circles::combinatorics::{convex_dimension, verify_convex_geometry, ClosureSystem, Subset};
use almost_circles::curves::eval_f64;
use almost_circles::hull::{CurveFamily, HullConfig, HullEngine, PlaneCurve};
use almost_circles::representation::multiplicity_for_accuracy;
use almost_circles::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotConvexGeometry = 4,
    VerificationFailed = 5,
    Internal = 6,
}

/// A closure system on `{1, …, n}`.
pub struct AcGeometry {
    system: ClosureSystem,
}

/// A labelled family of almost-circles read from a certificate.
pub struct AcFamily {
    curves: CurveFamily,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn fail(status: AcStatus, message: impl Into<String>) -> AcStatus {
    set_last_error(message);
    status
}

fn from_error(err: Error) -> AcStatus {
    let status = match err {
        Error::NotConvexGeometry { .. } => AcStatus::NotConvexGeometry,
        _ => AcStatus::InvalidInput,
    };
    fail(status, err.to_string())
}

fn guard(body: impl FnOnce() -> AcStatus) -> AcStatus {
    set_last_error("");
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(AcStatus::Internal, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, AcStatus> {
    if s.is_null() {
        return Err(fail(AcStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(AcStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! out {
    ($p:expr) => {
        if $p.is_null() {
            return fail(AcStatus::NullPointer, concat!(stringify!($p), " is null"));
        }
    };
}

macro_rules! handle {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => h,
            None => return fail(AcStatus::NullPointer, concat!(stringify!($p), " is null")),
        }
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ac_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"n", "closed_sets"}` or `{"n", "orders"}` JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_geometry_from_json(json: *const c_char, out: *mut *mut AcGeometry) -> AcStatus {
    guard(|| {
        out!(out);
        let text = tri!(read_str(json));
        let value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return fail(AcStatus::InvalidInput, e.to_string()),
        };
        match load_geometry(value) {
            Ok(system) => {
                *out = Box::into_raw(Box::new(AcGeometry { system }));
                AcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `geometry` must be null or a handle from [`ac_geometry_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ac_geometry_free(geometry: *mut AcGeometry) {
    if !geometry.is_null() {
        drop(Box::from_raw(geometry));
    }
}

/// # Safety
/// `geometry` must be a live handle and `n` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_geometry_size(geometry: *const AcGeometry, n: *mut usize) -> AcStatus {
    guard(|| {
        let g = handle!(geometry);
        out!(n);
        *n = g.system.n();
        AcStatus::Ok
    })
}

/// Writes whether the geometry satisfies anti-exchange. When it does not and
/// the witness pointers are non-null, they receive the first `(A, x, y)`, with
/// `A` as a bit mask (bit `e − 1` for element `e`).
///
/// # Safety
/// `geometry` must be a live handle, `is_convex` valid, the witness pointers
/// valid or null.
#[no_mangle]
pub unsafe extern "C" fn ac_geometry_is_convex(
    geometry: *const AcGeometry,
    is_convex: *mut bool,
    witness_set: *mut u32,
    witness_x: *mut usize,
    witness_y: *mut usize,
) -> AcStatus {
    guard(|| {
        let g = handle!(geometry);
        out!(is_convex);
        let report = match verify_convex_geometry(&g.system) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        *is_convex = report.is_convex_geometry();
        if let Some(&(set, x, y)) = report.witnesses.first() {
            if !witness_set.is_null() {
                *witness_set = set.bits();
            }
            if !witness_x.is_null() {
                *witness_x = x;
            }
            if !witness_y.is_null() {
                *witness_y = y;
            }
        }
        AcStatus::Ok
    })
}

/// # Safety
/// `geometry` must be a live handle and `closure` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_geometry_closure(geometry: *const AcGeometry, mask: u32, closure: *mut u32) -> AcStatus {
    guard(|| {
        let g = handle!(geometry);
        out!(closure);
        if !Subset(mask).is_subset_of(g.system.full()) {
            return fail(AcStatus::InvalidInput, format!("mask {mask:#x} has bits outside the ground set"));
        }
        *closure = g.system.closure_of(Subset(mask)).bits();
        AcStatus::Ok
    })
}

/// # Safety
/// `geometry` must be a live handle and `dimension` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_geometry_convex_dimension(geometry: *const AcGeometry, dimension: *mut usize) -> AcStatus {
    guard(|| {
        let g = handle!(geometry);
        out!(dimension);
        if let Err(e) = certificate::require_convex_geometry(&g.system) {
            return from_error(e);
        }
        match convex_dimension(&g.system) {
            Ok(d) => {
                *dimension = d;
                AcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds and verifies a representation and writes its certificate JSON.
/// `multiplicity == 0` derives `m` from `epsilon`; `family_id` may be null.
/// A certificate whose verdict fails is still written, with status
/// `VerificationFailed`.
///
/// # Safety
/// `geometry` must be a live handle, `family_id` null or NUL-terminated,
/// `certificate_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_represent(
    geometry: *const AcGeometry,
    epsilon: f64,
    multiplicity: usize,
    family_id: *const c_char,
    certificate_json: *mut *mut c_char,
) -> AcStatus {
    guard(|| {
        let g = handle!(geometry);
        out!(certificate_json);
        let family_id = if family_id.is_null() { DEFAULT_FAMILY_ID } else { tri!(read_str(family_id)) };
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return fail(AcStatus::InvalidInput, format!("epsilon {epsilon} is not in (0, 1)"));
        }
        let opts = RepresentOptions {
            epsilon,
            multiplicity: (multiplicity > 0).then_some(multiplicity),
            family_id: family_id.to_owned(),
            directions: HullConfig::default().directions,
        };
        let cert = match certificate::represent(&g.system, &opts) {
            Ok(c) => c,
            Err(e) => return from_error(e),
        };
        let text = match cert.to_json_pretty() {
            Ok(t) => t,
            Err(e) => return fail(AcStatus::Internal, e.to_string()),
        };
        *certificate_json = into_c_string(text);
        if cert.verdict.pass {
            AcStatus::Ok
        } else {
            fail(AcStatus::VerificationFailed, format!("verdict {:?}", cert.verdict))
        }
    })
}

/// Re-checks a certificate. `report_json`, if non-null, receives the full
/// report. Returns `VerificationFailed` when any check fails.
///
/// # Safety
/// `certificate_json` must be NUL-terminated, `pass` valid, `report_json`
/// valid or null.
#[no_mangle]
pub unsafe extern "C" fn ac_verify_certificate(
    certificate_json: *const c_char,
    pass: *mut bool,
    report_json: *mut *mut c_char,
) -> AcStatus {
    guard(|| {
        out!(pass);
        let cert = match Certificate::from_json_str(tri!(read_str(certificate_json))) {
            Ok(c) => c,
            Err(e) => return from_error(e),
        };
        let report = certificate::verify(&cert, None);
        *pass = report.pass;
        if !report_json.is_null() {
            *report_json = into_c_string(serde_json::to_string(&report).expect("plain JSON"));
        }
        match report.first_failure() {
            None => AcStatus::Ok,
            Some(c) => fail(AcStatus::VerificationFailed, format!("{}: {}", c.name, c.detail)),
        }
    })
}

/// `f_α(x) = x(1 − x) − α·x⁵(1 − x)²` for `α ∈ (0, 1)`, `x ∈ [0, 1]`.
///
/// # Safety
/// `value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_good_function_eval(alpha: f64, x: f64, value: *mut f64) -> AcStatus {
    guard(|| {
        out!(value);
        if !(alpha > 0.0 && alpha < 1.0) || !(0.0..=1.0).contains(&x) {
            return fail(AcStatus::InvalidInput, format!("alpha = {alpha}, x = {x} out of domain"));
        }
        *value = eval_f64(alpha, x);
        AcStatus::Ok
    })
}

/// # Safety
/// `m` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_multiplicity_for_accuracy(t: usize, epsilon: f64, m: *mut usize) -> AcStatus {
    guard(|| {
        out!(m);
        match multiplicity_for_accuracy(t, epsilon) {
            Ok(v) => {
                *m = v;
                AcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Loads the member curves of a certificate, labelled by their elements.
///
/// # Safety
/// `certificate_json` must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_family_from_certificate(certificate_json: *const c_char, out: *mut *mut AcFamily) -> AcStatus {
    guard(|| {
        out!(out);
        let loaded = Certificate::from_json_str(tri!(read_str(certificate_json)))
            .and_then(|c| c.curves())
            .and_then(|curves| {
                let (labels, members): (Vec<usize>, Vec<PlaneCurve>) =
                    curves.into_iter().map(|(e, c)| (e, PlaneCurve::curve(c))).unzip();
                CurveFamily::new(members, labels)
            });
        match loaded {
            Ok(curves) => {
                *out = Box::into_raw(Box::new(AcFamily { curves }));
                AcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `family` must be null or a handle from [`ac_family_from_certificate`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ac_family_free(family: *mut AcFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// # Safety
/// `family` must be a live handle and `n` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_family_size(family: *const AcFamily, n: *mut usize) -> AcStatus {
    guard(|| {
        let f = handle!(family);
        out!(n);
        *n = f.curves.len();
        AcStatus::Ok
    })
}

/// Labels of the members inside the convex hull of the members in `mask`.
///
/// # Safety
/// `family` must be a live handle and `hull` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ac_family_hull(family: *const AcFamily, mask: u32, hull: *mut u32) -> AcStatus {
    guard(|| {
        let f = handle!(family);
        out!(hull);
        if !Subset(mask).is_subset_of(Subset::full(f.curves.len())) {
            return fail(AcStatus::InvalidInput, format!("mask {mask:#x} has bits outside the family"));
        }
        match HullEngine::new(&f.curves, HullConfig::default()) {
            Ok(engine) => {
                *hull = engine.hull_operator(Subset(mask)).bits();
                AcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
