//! C ABI over the tclose engine.
//!
//! Every function returns a [`TcloseStatus`]. On failure the message is
//! available from [`tclose_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`tclose_string_free`], and
//! sessions with [`tclose_session_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tclose::closures::closure_by_name;
use tclose::closures::{DEFAULT_CONFIRM, DEFAULT_E_MAX, DEFAULT_N_MAX};
use tclose::parse::parse_polynomial_list;
use tclose::verdict::Status;
use tclose::{Error, Ideal, RingFile};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcloseStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed ring file, expression or unknown name.
    Parse = 3,
    InvalidArgument = 4,
    BudgetExceeded = 5,
    /// An audit or axiom check failed.
    AssertionFailed = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcloseVerdict {
    In = 0,
    Out = 1,
    Unknown = 2,
    EvidenceIn = 3,
}

/// A parsed ring file with its named ideals.
pub struct TcloseSession {
    file: RingFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(err: &Error) -> TcloseStatus {
    match err {
        Error::BudgetExceeded { .. } => TcloseStatus::BudgetExceeded,
        Error::AxiomViolation(_) | Error::AuditFailure(_) => TcloseStatus::AssertionFailed,
        Error::InvalidArgument(_) | Error::NotContained | Error::Unsupported(_) => TcloseStatus::InvalidArgument,
        _ => TcloseStatus::Parse,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), (TcloseStatus, String)>) -> TcloseStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TcloseStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TcloseStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (TcloseStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (TcloseStatus, String)> {
    if p.is_null() {
        return Err((TcloseStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TcloseStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

fn resolve(file: &RingFile, spec: &str) -> Result<Ideal, Error> {
    let s = spec.trim();
    if s.starts_with('[') {
        let gens = parse_polynomial_list(file.ring.base(), s)?;
        Ok(Ideal::new(file.ring.clone(), gens))
    } else {
        file.ideal(s).cloned()
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tclose_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tclose_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a ring file held in `source`.
///
/// # Safety
/// `source` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tclose_session_new(source: *const c_char, out: *mut *mut TcloseSession) -> TcloseStatus {
    guard(|| {
        if out.is_null() {
            return Err((TcloseStatus::NullPointer, "out is null".into()));
        }
        let src = str_arg(source, "source")?;
        let file = tclose::parse_ring_file(src).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TcloseSession { file }));
        Ok(())
    })
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `session` must come from [`tclose_session_new`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn tclose_session_free(session: *mut TcloseSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Membership of `elem` in the closure of `ideal` (a name or an inline
/// list). `closure` is `identity`, `frobenius`, `integral` or `newton`;
/// null means `identity`.
///
/// # Safety
/// Pointers must be valid; string arguments NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tclose_member(
    session: *const TcloseSession,
    ideal: *const c_char,
    elem: *const c_char,
    closure: *const c_char,
    out: *mut TcloseVerdict,
) -> TcloseStatus {
    guard(|| {
        if session.is_null() || out.is_null() {
            return Err((TcloseStatus::NullPointer, "session or out is null".into()));
        }
        let file = &(*session).file;
        let ideal = resolve(file, str_arg(ideal, "ideal")?).map_err(lib_err)?;
        let x = file.ring.parse_poly(str_arg(elem, "elem")?).map_err(lib_err)?;
        let name = if closure.is_null() { "identity" } else { str_arg(closure, "closure")? };
        let cl = closure_by_name(name, DEFAULT_E_MAX, DEFAULT_CONFIRM, DEFAULT_N_MAX).map_err(lib_err)?;
        let v = cl.member(&x, &ideal).map_err(lib_err)?;
        *out = match v.status {
            Status::In => TcloseVerdict::In,
            Status::Out => TcloseVerdict::Out,
            Status::Unknown => TcloseVerdict::Unknown,
            Status::EvidenceIn => TcloseVerdict::EvidenceIn,
        };
        Ok(())
    })
}

/// Reduced Gröbner basis of `ideal` as a JSON array of strings.
///
/// # Safety
/// Pointers must be valid; release `*out` with [`tclose_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tclose_groebner_basis(
    session: *const TcloseSession,
    ideal: *const c_char,
    out: *mut *mut c_char,
) -> TcloseStatus {
    guard(|| {
        if session.is_null() || out.is_null() {
            return Err((TcloseStatus::NullPointer, "session or out is null".into()));
        }
        let file = &(*session).file;
        let ideal = resolve(file, str_arg(ideal, "ideal")?).map_err(lib_err)?;
        let gb = ideal.gb_strings().map_err(lib_err)?;
        *out = into_c_string(serde_json::Value::from(gb).to_string());
        Ok(())
    })
}

/// Runs a command-line invocation in process. `argv` holds `argc`
/// arguments without the program name. The report (stdout, or the error
/// text when stdout is empty) goes to `*out` and the exit code to
/// `*exit_code`.
///
/// # Safety
/// `argv` must point to `argc` valid NUL-terminated strings; release `*out`
/// with [`tclose_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tclose_run(
    argc: c_int,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut c_int,
) -> TcloseStatus {
    guard(|| {
        if out.is_null() || exit_code.is_null() || (argc > 0 && argv.is_null()) {
            return Err((TcloseStatus::NullPointer, "argv, out or exit_code is null".into()));
        }
        let mut args = Vec::with_capacity(argc.max(0) as usize);
        for i in 0..argc.max(0) as usize {
            args.push(str_arg(*argv.add(i), "argv element")?.to_string());
        }
        let res = tclose::cli::run(args);
        *exit_code = res.code;
        *out = into_c_string(if res.stdout.is_empty() { res.stderr } else { res.stdout });
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tclose_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
