//! C ABI for the ffheights library.
//!
//! Conventions:
//!   * every constructor writes an opaque handle through an out-pointer and
//!     returns a status code; handles are released with the matching
//!     `*_free` function;
//!   * numeric results cross the boundary as exact "a/b" strings or JSON
//!     documents, allocated here and released with `ffh_string_free`;
//!   * panics never unwind across the boundary (status `FFH_ERR_PANIC`);
//!   * the most recent error message is available per thread through
//!     `ffh_last_error_message`.

use ffheights::config::Caps;
use ffheights::dynamics::{self, RationalMap};
use ffheights::elliptic::{self, EPoint, EllipticCurve};
use ffheights::error::FfhError;
use ffheights::ffield::GroundField;
use ffheights::lattice::{self, KodairaType};
use ffheights::projheights::{self, ProjPoint};
use ffheights::rat::{rat_from_str, rat_to_string};
use ffheights::wire;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FfhStatus {
    Ok = 0,
    ErrDomain = 1,
    ErrValidation = 2,
    ErrResource = 3,
    ErrParse = 4,
    ErrUnsupported = 5,
    ErrNull = 6,
    ErrUtf8 = 7,
    ErrPanic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &FfhError) -> FfhStatus {
    match err {
        FfhError::Domain(_) => FfhStatus::ErrDomain,
        FfhError::Validation(_) => FfhStatus::ErrValidation,
        FfhError::Resource(_) => FfhStatus::ErrResource,
        FfhError::Parse(_) => FfhStatus::ErrParse,
        FfhError::Unsupported(_) => FfhStatus::ErrUnsupported,
    }
}

/// Opaque field handle (F_{p^m} plus its canonical modulus).
pub struct FfhField {
    field: GroundField,
}

/// Opaque rational-map handle; the field of definition is embedded.
pub struct FfhMap {
    map: RationalMap,
}

/// Opaque point of P^1 over a constant extension.
pub struct FfhPoint {
    point: ProjPoint,
    field: GroundField,
}

/// Opaque elliptic curve handle.
pub struct FfhCurve {
    curve: EllipticCurve,
}

/// Opaque elliptic point handle.
pub struct FfhEPoint {
    point: EPoint,
}

fn guard<F: FnOnce() -> FfhStatus>(f: F) -> FfhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            FfhStatus::ErrPanic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, FfhStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(FfhStatus::ErrNull);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        FfhStatus::ErrUtf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> FfhStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            FfhStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL");
            FfhStatus::ErrPanic
        }
    }
}

macro_rules! try_ffi {
    ($expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        }
    };
}

/// The most recent error message on this thread, or NULL; caller frees.
#[no_mangle]
pub extern "C" fn ffh_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by an ffheights function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ffh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a string; caller frees.
#[no_mangle]
pub extern "C" fn ffh_version() -> *mut c_char {
    CString::new(env!("CARGO_PKG_VERSION")).unwrap().into_raw()
}

/// Construct F_{p^m}.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn ffh_field_new(p: u64, m: u32, out: *mut *mut FfhField) -> FfhStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out-pointer");
            return FfhStatus::ErrNull;
        }
        let field = try_ffi!(GroundField::new(p, m as usize));
        *out = Box::into_raw(Box::new(FfhField { field }));
        FfhStatus::Ok
    })
}

/// Construct the field of order q = p^m.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn ffh_field_from_order(q: u64, out: *mut *mut FfhField) -> FfhStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out-pointer");
            return FfhStatus::ErrNull;
        }
        let field = try_ffi!(GroundField::from_order(q));
        *out = Box::into_raw(Box::new(FfhField { field }));
        FfhStatus::Ok
    })
}

/// # Safety
/// `f` must be a live handle from `ffh_field_new`/`ffh_field_from_order`.
#[no_mangle]
pub unsafe extern "C" fn ffh_field_free(f: *mut FfhField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Parse a rational map literal like "(z^2+t)/z" over the field.
///
/// # Safety
/// `field` must be live; `src` a NUL-terminated string; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_map_parse(
    field: *const FfhField,
    src: *const c_char,
    out: *mut *mut FfhMap,
) -> FfhStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        let s = match read_str(src) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let map = try_ffi!(RationalMap::parse(s, &(*field).field));
        *out = Box::into_raw(Box::new(FfhMap { map }));
        FfhStatus::Ok
    })
}

/// # Safety
/// `m` must be a live map handle.
#[no_mangle]
pub unsafe extern "C" fn ffh_map_free(m: *mut FfhMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// The certified height-gap constant C(f), as "a/b"; caller frees.
///
/// # Safety
/// `m` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_map_gap_constant(
    m: *const FfhMap,
    out: *mut *mut c_char,
) -> FfhStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        give_string(rat_to_string(&(*m).map.gap_constant()), out)
    })
}

/// Parse a point literal "[a : b]" over a constant extension of index m.
///
/// # Safety
/// `field` must be live; `src` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_point_parse(
    field: *const FfhField,
    src: *const c_char,
    m: u32,
    out: *mut *mut FfhPoint,
) -> FfhStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        let s = match read_str(src) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let k = &(*field).field;
        let point = try_ffi!(ProjPoint::parse(s, m, k));
        *out = Box::into_raw(Box::new(FfhPoint {
            point,
            field: k.clone(),
        }));
        FfhStatus::Ok
    })
}

/// # Safety
/// `p` must be a live point handle.
#[no_mangle]
pub unsafe extern "C" fn ffh_point_free(p: *mut FfhPoint) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Naive Weil height as "a/b"; caller frees.
///
/// # Safety
/// `p` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_height(p: *const FfhPoint, out: *mut *mut c_char) -> FfhStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        give_string(rat_to_string(&projheights::height(&(*p).point)), out)
    })
}

/// Local height decomposition as a JSON document; caller frees.
///
/// # Safety
/// `p` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_local_heights_json(
    p: *const FfhPoint,
    out: *mut *mut c_char,
) -> FfhStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        let h = &*p;
        let prof = try_ffi!(projheights::local_heights(&h.point, &h.field));
        give_string(wire::profile_to_json(&prof, &h.field).to_string(), out)
    })
}

/// Canonical height with certified error <= eps ("a/b" string), as a JSON
/// document {"value","error_bound","exact"}; caller frees.
///
/// # Safety
/// All handles must be live; `eps` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_canonical_height(
    map: *const FfhMap,
    p: *const FfhPoint,
    eps: *const c_char,
    out: *mut *mut c_char,
) -> FfhStatus {
    guard(|| {
        if map.is_null() || p.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        let eps_s = match read_str(eps) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let eps = try_ffi!(rat_from_str(eps_s));
        let est = try_ffi!(dynamics::canonical_height(
            &(*map).map,
            &(*p).point,
            &eps,
            &Caps::default()
        ));
        give_string(wire::estimate_to_json(&est).to_string(), out)
    })
}

/// Exact preperiodicity decision; writes 0 or 1.
///
/// # Safety
/// Handles must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_is_preperiodic(
    map: *const FfhMap,
    p: *const FfhPoint,
    out: *mut bool,
) -> FfhStatus {
    guard(|| {
        if map.is_null() || p.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        *out = dynamics::is_preperiodic(&(*map).map, &(*p).point);
        FfhStatus::Ok
    })
}

/// Parse a curve from JSON {"a1":...,"a6":...} over the field.
///
/// # Safety
/// `field` live; `json` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_curve_parse(
    field: *const FfhField,
    json: *const c_char,
    out: *mut *mut FfhCurve,
) -> FfhStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        let s = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let w: wire::CurveWire = match serde_json::from_str(s) {
            Ok(w) => w,
            Err(e) => {
                set_error(&format!("bad curve JSON: {e}"));
                return FfhStatus::ErrParse;
            }
        };
        let curve = try_ffi!(w.to_curve(&(*field).field));
        *out = Box::into_raw(Box::new(FfhCurve { curve }));
        FfhStatus::Ok
    })
}

/// # Safety
/// `c` must be a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn ffh_curve_free(c: *mut FfhCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parse an elliptic point: "O" or {"x":"...","y":"..."}.
///
/// # Safety
/// `field` live; `json` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_epoint_parse(
    field: *const FfhField,
    json: *const c_char,
    out: *mut *mut FfhEPoint,
) -> FfhStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        let s = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let k = &(*field).field;
        let point = if s.trim() == "O" {
            EPoint::Zero
        } else {
            let v: serde_json::Value = match serde_json::from_str(s) {
                Ok(v) => v,
                Err(e) => {
                    set_error(&format!("bad point JSON: {e}"));
                    return FfhStatus::ErrParse;
                }
            };
            try_ffi!(wire::epoint_from_json(&v, k))
        };
        *out = Box::into_raw(Box::new(FfhEPoint { point }));
        FfhStatus::Ok
    })
}

/// # Safety
/// `p` must be a live elliptic point handle.
#[no_mangle]
pub unsafe extern "C" fn ffh_epoint_free(p: *mut FfhEPoint) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Neron-Tate height (theta-normalized) within eps, as JSON; caller frees.
///
/// # Safety
/// Handles live; `eps` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_nt_height(
    curve: *const FfhCurve,
    p: *const FfhEPoint,
    eps: *const c_char,
    out: *mut *mut c_char,
) -> FfhStatus {
    guard(|| {
        if curve.is_null() || p.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        let eps_s = match read_str(eps) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let eps = try_ffi!(rat_from_str(eps_s));
        let est = try_ffi!(elliptic::nt_height(
            &(*curve).curve,
            &(*p).point,
            &eps,
            &Caps::default()
        ));
        give_string(wire::estimate_to_json(&est).to_string(), out)
    })
}

/// Exact torsion decision; writes 0 or 1.
///
/// # Safety
/// Handles live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_is_torsion(
    curve: *const FfhCurve,
    p: *const FfhEPoint,
    out: *mut bool,
) -> FfhStatus {
    guard(|| {
        if curve.is_null() || p.is_null() || out.is_null() {
            set_error("null argument");
            return FfhStatus::ErrNull;
        }
        *out = try_ffi!(elliptic::is_torsion(&(*curve).curve, &(*p).point));
        FfhStatus::Ok
    })
}

/// Local Hodge index verdict for a Kodaira type name ("I3", "IV*", ...),
/// as a JSON report; caller frees.
///
/// # Safety
/// `name` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_fiber_check_type(
    name: *const c_char,
    out: *mut *mut c_char,
) -> FfhStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out-pointer");
            return FfhStatus::ErrNull;
        }
        let s = match read_str(name) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let ty = try_ffi!(KodairaType::parse(s));
        let rep = lattice::check_local_hodge(&ty.template());
        give_string(wire::hodge_report_to_json(&rep).to_string(), out)
    })
}

/// Faltings-Hriljac cross-check from a combined JSON input (same schema as
/// the CLI fh-check), with certified error <= eps; JSON report out.
///
/// # Safety
/// `json` and `eps` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ffh_fh_check(
    json: *const c_char,
    eps: *const c_char,
    out: *mut *mut c_char,
) -> FfhStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out-pointer");
            return FfhStatus::ErrNull;
        }
        let s = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let eps_s = match read_str(eps) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let eps = try_ffi!(rat_from_str(eps_s));
        let input: wire::FhInput = match serde_json::from_str(s) {
            Ok(v) => v,
            Err(e) => {
                set_error(&format!("bad fh-check input: {e}"));
                return FfhStatus::ErrParse;
            }
        };
        let (_k, model, divisor, class) = try_ffi!(input.load());
        let rep = try_ffi!(lattice::faltings_hriljac_check(
            &model,
            &divisor,
            class.as_ref().map(|(c, p)| (c, p)),
            &eps,
            &Caps::default()
        ));
        give_string(wire::fh_report_to_json(&rep).to_string(), out)
    })
}
