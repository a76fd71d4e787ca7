use std::ffi::{CStr, CString};
use std::ptr;
use tclose_ffi::*;

const HS: &str = "ring { char = 5; vars = [x, y, z, w]; relations = [x*y - z*w] }\nideal K = [x + y, z, w]\nideal I = [z, w]\n";

fn session() -> *mut TcloseSession {
    let src = CString::new(HS).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tclose_session_new(src.as_ptr(), &mut s) }, TcloseStatus::Ok);
    s
}

fn member(s: *mut TcloseSession, ideal: &str, elem: &str, closure: Option<&str>) -> (TcloseStatus, TcloseVerdict) {
    let (i, e) = (CString::new(ideal).unwrap(), CString::new(elem).unwrap());
    let c = closure.map(|c| CString::new(c).unwrap());
    let mut v = TcloseVerdict::Unknown;
    let st = unsafe { tclose_member(s, i.as_ptr(), e.as_ptr(), c.as_ref().map_or(ptr::null(), |c| c.as_ptr()), &mut v) };
    (st, v)
}

#[test]
fn membership_through_the_abi() {
    let s = session();
    assert_eq!(member(s, "I", "x*y", None), (TcloseStatus::Ok, TcloseVerdict::In));
    assert_eq!(member(s, "K", "y", Some("integral")), (TcloseStatus::Ok, TcloseVerdict::In));
    assert_eq!(member(s, "[x, z, w]", "y", Some("integral")), (TcloseStatus::Ok, TcloseVerdict::Out));
    unsafe { tclose_session_free(s) };
}

#[test]
fn errors_are_reported() {
    let s = session();
    let (st, _) = member(s, "Nope", "x", None);
    assert_eq!(st, TcloseStatus::Parse);
    let msg = unsafe { CStr::from_ptr(tclose_last_error()) }.to_str().unwrap();
    assert!(msg.contains("Nope"));
    assert_eq!(member(s, "I", "x", Some("bogus")).0, TcloseStatus::InvalidArgument);
    let mut v = TcloseVerdict::Unknown;
    assert_eq!(unsafe { tclose_member(s, ptr::null(), ptr::null(), ptr::null(), &mut v) }, TcloseStatus::NullPointer);
    let bad = CString::new("ring { char = 4; vars = [x] }").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { tclose_session_new(bad.as_ptr(), &mut t) }, TcloseStatus::Parse);
    assert!(t.is_null());
    unsafe { tclose_session_free(s) };
}

#[test]
fn groebner_basis_json() {
    let s = session();
    let i = CString::new("K").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tclose_groebner_basis(s, i.as_ptr(), &mut out) }, TcloseStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v.as_array().unwrap().len() >= 3);
    unsafe {
        tclose_string_free(out);
        tclose_session_free(s);
    }
}

#[test]
fn run_command_in_process() {
    let ring = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/a2-spread/a2.ring");
    let args: Vec<CString> = ["spread", "--ring", ring.to_str().unwrap(), "--ideal", "M2", "--closure", "newton", "--json"]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { tclose_run(ptrs.len() as i32, ptrs.as_ptr(), &mut out, &mut code) }, TcloseStatus::Ok);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    assert_eq!(v["result"]["mu_set"], serde_json::json!([2]));
    unsafe { tclose_string_free(out) };
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/tclose.h")).unwrap();
    for name in ["tclose_session_new", "tclose_member", "tclose_run", "tclose_string_free", "TCLOSE_STATUS_BUDGET_EXCEEDED", "TcloseSession"] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
