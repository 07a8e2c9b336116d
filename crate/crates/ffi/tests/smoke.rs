//! Exercise the C ABI from Rust: handle lifecycle, status codes, string
//! results, and error reporting.

use ffheights_ffi::*;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    ffh_string_free(p);
    s
}

#[test]
fn field_and_point_lifecycle() {
    unsafe {
        let mut field: *mut FfhField = ptr::null_mut();
        assert_eq!(ffh_field_new(3, 1, &mut field), FfhStatus::Ok);

        let lit = CString::new("[t^2+1 : t]").unwrap();
        let mut point: *mut FfhPoint = ptr::null_mut();
        assert_eq!(
            ffh_point_parse(field, lit.as_ptr(), 1, &mut point),
            FfhStatus::Ok
        );

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(ffh_height(point, &mut out), FfhStatus::Ok);
        assert_eq!(take_string(out), "2");

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(ffh_local_heights_json(point, &mut json), FfhStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["total"], "2");

        ffh_point_free(point);
        ffh_field_free(field);
    }
}

#[test]
fn canonical_height_and_preperiodicity() {
    unsafe {
        let mut field: *mut FfhField = ptr::null_mut();
        assert_eq!(ffh_field_from_order(2, &mut field), FfhStatus::Ok);

        let map_src = CString::new("z^2+t").unwrap();
        let mut map: *mut FfhMap = ptr::null_mut();
        assert_eq!(
            ffh_map_parse(field, map_src.as_ptr(), &mut map),
            FfhStatus::Ok
        );

        let mut gap: *mut c_char = ptr::null_mut();
        assert_eq!(ffh_map_gap_constant(map, &mut gap), FfhStatus::Ok);
        assert_eq!(take_string(gap), "3");

        let lit = CString::new("[0 : 1]").unwrap();
        let mut point: *mut FfhPoint = ptr::null_mut();
        assert_eq!(
            ffh_point_parse(field, lit.as_ptr(), 1, &mut point),
            FfhStatus::Ok
        );

        let eps = CString::new("1/100").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            ffh_canonical_height(map, point, eps.as_ptr(), &mut out),
            FfhStatus::Ok
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(doc["value"], "1/2");

        let mut pre = true;
        assert_eq!(ffh_is_preperiodic(map, point, &mut pre), FfhStatus::Ok);
        assert!(!pre);

        ffh_point_free(point);
        ffh_map_free(map);
        ffh_field_free(field);
    }
}

#[test]
fn elliptic_surface() {
    unsafe {
        let mut field: *mut FfhField = ptr::null_mut();
        assert_eq!(ffh_field_new(5, 1, &mut field), FfhStatus::Ok);

        let curve_json = CString::new(r#"{"a4": "t^2", "a6": "t^2"}"#).unwrap();
        let mut curve: *mut FfhCurve = ptr::null_mut();
        assert_eq!(
            ffh_curve_parse(field, curve_json.as_ptr(), &mut curve),
            FfhStatus::Ok
        );

        let p_json = CString::new(r#"{"x": "4", "y": "2"}"#).unwrap();
        let mut p: *mut FfhEPoint = ptr::null_mut();
        assert_eq!(
            ffh_epoint_parse(field, p_json.as_ptr(), &mut p),
            FfhStatus::Ok
        );

        let mut torsion = true;
        assert_eq!(ffh_is_torsion(curve, p, &mut torsion), FfhStatus::Ok);
        assert!(!torsion);

        let eps = CString::new("1/100").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            ffh_nt_height(curve, p, eps.as_ptr(), &mut out),
            FfhStatus::Ok
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        // theta-normalized height of this section is 1/2 (within 1/100)
        assert!(doc["value"].as_str().unwrap().contains('/'));

        ffh_epoint_free(p);
        ffh_curve_free(curve);
        ffh_field_free(field);
    }
}

#[test]
fn fiber_check_and_errors() {
    unsafe {
        let name = CString::new("I3").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(ffh_fiber_check_type(name.as_ptr(), &mut out), FfhStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(doc["pass"], true);
        assert_eq!(doc["kernel_dim"], 1);

        // unknown type: parse error plus a retrievable message
        let bad = CString::new("W7").unwrap();
        let mut out2: *mut c_char = ptr::null_mut();
        assert_eq!(
            ffh_fiber_check_type(bad.as_ptr(), &mut out2),
            FfhStatus::ErrParse
        );
        let msg = ffh_last_error_message();
        assert!(take_string(msg).contains("Kodaira"));

        // null handling
        assert_eq!(
            ffh_fiber_check_type(ptr::null(), &mut out2),
            FfhStatus::ErrNull
        );

        // singular curve: domain error propagates the status code
        let mut field: *mut FfhField = ptr::null_mut();
        assert_eq!(ffh_field_new(5, 1, &mut field), FfhStatus::Ok);
        let curve_json = CString::new(r#"{"a4": "0", "a6": "0"}"#).unwrap();
        let mut curve: *mut FfhCurve = ptr::null_mut();
        assert_eq!(
            ffh_curve_parse(field, curve_json.as_ptr(), &mut curve),
            FfhStatus::ErrDomain
        );
        ffh_field_free(field);
    }
}

#[test]
fn fh_check_roundtrip() {
    unsafe {
        let path = format!(
            "{}/../core/fixtures/fh_nontorsion.json",
            env!("CARGO_MANIFEST_DIR")
        );
        let data = std::fs::read_to_string(path).unwrap();
        let json = CString::new(data).unwrap();
        let eps = CString::new("1/100").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            ffh_fh_check(json.as_ptr(), eps.as_ptr(), &mut out),
            FfhStatus::Ok
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(doc["pass"], true);
        assert_eq!(doc["pairing"], "-1");
    }
}
