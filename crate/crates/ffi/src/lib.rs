//! C ABI for the chenbar library: opaque connection handles, status
//! codes, and UTF-8 report strings.
//!
//! Conventions:
//!
//! * every function returns a [`ChbStatus`]; outputs go through `out`
//!   pointers, written only on `Ok`;
//! * strings handed out are heap-allocated, NUL-terminated UTF-8 and
//!   must be released with [`chb_string_free`];
//! * connection handles come from [`chb_connection_parse`] and must be
//!   released with [`chb_connection_free`];
//! * on any non-`Ok` status, [`chb_last_error_message`] returns a
//!   human-readable description for the calling thread;
//! * callers must pass valid, properly aligned pointers; out-pointers
//!   must be writable. That contract applies to every function below
//!   and is not repeated per item.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use chenbar::bar::FiltrationLabel;
use chenbar::connection::{Connection, ConnectionError};
use chenbar::path::PathWord;
use chenbar::report;
use chenbar::sampler::SamplerConfig;

/// Opaque handle to a parsed, validated connection.
pub struct ChbConnection {
    inner: Connection,
}

/// Status codes returned by every `chb_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChbStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Connection file, path word or parameter failed to parse.
    ParseError = 3,
    /// The operation requires a flat connection and A∧A ≠ 0.
    NotFlat = 4,
    /// Parameters were out of range.
    InvalidArgument = 5,
    /// The verifier found a theorem-equivalence counterexample.
    Disagreement = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("NULs stripped"));
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn status_of(error: &ConnectionError) -> ChbStatus {
    match error {
        ConnectionError::NotFlat(_) => ChbStatus::NotFlat,
        ConnectionError::Parse { .. } => ChbStatus::ParseError,
        _ => ChbStatus::InvalidArgument,
    }
}

/// Reads a caller string; records an error and reports the status to
/// return on failure.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, ChbStatus> {
    if ptr.is_null() {
        set_last_error(format!("{what} pointer is null"));
        return Err(ChbStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error(format!("{what} is not valid UTF-8"));
        ChbStatus::InvalidUtf8
    })
}

fn give_string(out: *mut *mut c_char, text: String) -> ChbStatus {
    let owned = CString::new(text.replace('\0', " ")).expect("NULs stripped");
    unsafe {
        *out = owned.into_raw();
    }
    clear_last_error();
    ChbStatus::Ok
}

/// The last error message for this thread, or null when the previous
/// call succeeded. The caller owns the string; free it with
/// [`chb_string_free`].
#[no_mangle]
pub extern "C" fn chb_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn chb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a connection file (the `torus`/`blocks`/`entry` grammar) into
/// a handle. On success the handle must be freed with
/// [`chb_connection_free`].
#[no_mangle]
pub unsafe extern "C" fn chb_connection_parse(
    text: *const c_char,
    out: *mut *mut ChbConnection,
) -> ChbStatus {
    if out.is_null() {
        set_last_error("out pointer is null");
        return ChbStatus::NullArgument;
    }
    let text = match read_str(text, "connection text") {
        Ok(t) => t,
        Err(status) => return status,
    };
    match Connection::parse(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(ChbConnection { inner }));
            clear_last_error();
            ChbStatus::Ok
        }
        Err(e) => {
            set_last_error(e.to_string());
            ChbStatus::ParseError
        }
    }
}

/// Releases a connection handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn chb_connection_free(connection: *mut ChbConnection) {
    if !connection.is_null() {
        drop(Box::from_raw(connection));
    }
}

unsafe fn borrow_connection<'a>(
    connection: *const ChbConnection,
) -> Result<&'a Connection, ChbStatus> {
    if connection.is_null() {
        set_last_error("connection handle is null");
        return Err(ChbStatus::NullArgument);
    }
    Ok(&(*connection).inner)
}

/// Renders the canonical connection-file text for a handle.
#[no_mangle]
pub unsafe extern "C" fn chb_connection_render(
    connection: *const ChbConnection,
    out: *mut *mut c_char,
) -> ChbStatus {
    if out.is_null() {
        set_last_error("out pointer is null");
        return ChbStatus::NullArgument;
    }
    let connection = match borrow_connection(connection) {
        Ok(c) => c,
        Err(status) => return status,
    };
    give_string(out, connection.render())
}

/// Writes 1 to `flat` when A∧A = 0, else 0 (with the first offending
/// entry described by [`chb_last_error_message`]).
#[no_mangle]
pub unsafe extern "C" fn chb_connection_is_flat(
    connection: *const ChbConnection,
    flat: *mut bool,
) -> ChbStatus {
    if flat.is_null() {
        set_last_error("flat pointer is null");
        return ChbStatus::NullArgument;
    }
    let connection = match borrow_connection(connection) {
        Ok(c) => c,
        Err(status) => return status,
    };
    match connection.check_flat() {
        chenbar::connection::FlatnessVerdict::Flat => {
            *flat = true;
            clear_last_error();
        }
        chenbar::connection::FlatnessVerdict::NotFlat(failure) => {
            *flat = false;
            set_last_error(failure.to_string());
        }
    }
    ChbStatus::Ok
}

/// Simpson-side classification of a flat connection: whether the
/// underlying holomorphic bundle is trivial (A^{0,1} = 0) and whether
/// the Higgs field is zero (A^{1,0} = 0).
#[no_mangle]
pub unsafe extern "C" fn chb_connection_classify(
    connection: *const ChbConnection,
    bundle_trivial: *mut bool,
    higgs_zero: *mut bool,
) -> ChbStatus {
    if bundle_trivial.is_null() || higgs_zero.is_null() {
        set_last_error("classification out pointer is null");
        return ChbStatus::NullArgument;
    }
    let connection = match borrow_connection(connection) {
        Ok(c) => c,
        Err(status) => return status,
    };
    match connection.simpson_split() {
        Ok(split) => {
            *bundle_trivial = split.underlying_bundle_trivial();
            *higgs_zero = split.higgs_field_zero();
            clear_last_error();
            ChbStatus::Ok
        }
        Err(e) => {
            let status = status_of(&e);
            set_last_error(e.to_string());
            status
        }
    }
}

/// Chen-series monodromy along a path word (`a1 b1 a1^-1 ...`),
/// rendered as one `[a, b, ...]` row per line in the exact scalar
/// grammar.
#[no_mangle]
pub unsafe extern "C" fn chb_connection_monodromy(
    connection: *const ChbConnection,
    path: *const c_char,
    out: *mut *mut c_char,
) -> ChbStatus {
    if out.is_null() {
        set_last_error("out pointer is null");
        return ChbStatus::NullArgument;
    }
    let connection = match borrow_connection(connection) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let path_text = match read_str(path, "path word") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let path = match PathWord::parse(connection.g(), path_text) {
        Ok(p) => p,
        Err(e) => {
            set_last_error(e.to_string());
            return ChbStatus::ParseError;
        }
    };
    match connection.monodromy(&path) {
        Ok(matrix) => give_string(out, matrix.to_string()),
        Err(e) => {
            let status = status_of(&e);
            set_last_error(e.to_string());
            status
        }
    }
}

/// Verifies both theorem equivalences on one connection. `agree`
/// receives the verdict; the full report text goes to `out`. A
/// disagreement is reported through the status as well.
#[no_mangle]
pub unsafe extern "C" fn chb_connection_verify(
    connection: *const ChbConnection,
    agree: *mut bool,
    out: *mut *mut c_char,
) -> ChbStatus {
    if agree.is_null() || out.is_null() {
        set_last_error("out pointer is null");
        return ChbStatus::NullArgument;
    }
    let connection = match borrow_connection(connection) {
        Ok(c) => c,
        Err(status) => return status,
    };
    match report::verify_file_report(connection) {
        Ok((text, ok)) => {
            *agree = ok;
            let status = give_string(out, text);
            if ok {
                status
            } else {
                set_last_error("theorem equivalence counterexample");
                ChbStatus::Disagreement
            }
        }
        Err(e) => {
            let status = status_of(&e);
            set_last_error(e.to_string());
            status
        }
    }
}

/// The echelon bases of the ideals I and Ī in ℂπ₁/J^{s+1}, as the CLI
/// prints them.
#[no_mangle]
pub unsafe extern "C" fn chb_ideals_report(
    g: u32,
    s: u32,
    out: *mut *mut c_char,
) -> ChbStatus {
    if out.is_null() {
        set_last_error("out pointer is null");
        return ChbStatus::NullArgument;
    }
    if g == 0 {
        set_last_error("g must be at least 1");
        return ChbStatus::InvalidArgument;
    }
    give_string(out, report::ideals_report(g as usize, s as usize))
}

/// One filtration step (`label` is "F", "Fbar" or "W") on the invariant
/// classes and its dual on ℂπ₁/J^{s+1}.
#[no_mangle]
pub unsafe extern "C" fn chb_filtration_report(
    g: u32,
    s: u32,
    label: *const c_char,
    level: i64,
    out: *mut *mut c_char,
) -> ChbStatus {
    if out.is_null() {
        set_last_error("out pointer is null");
        return ChbStatus::NullArgument;
    }
    if g == 0 {
        set_last_error("g must be at least 1");
        return ChbStatus::InvalidArgument;
    }
    let label = match read_str(label, "filtration label") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let label = match label {
        "F" => FiltrationLabel::Hodge,
        "Fbar" => FiltrationLabel::ConjugateHodge,
        "W" => FiltrationLabel::Weight,
        other => {
            set_last_error(format!("unknown filtration label `{other}`"));
            return ChbStatus::InvalidArgument;
        }
    };
    give_string(
        out,
        report::filtration_report(g as usize, s as usize, label, level),
    )
}

/// Runs the randomized theorem verifier; deterministic for a fixed
/// seed. `agree` receives the verdict and `out` the full report,
/// including a counterexample certificate on disagreement.
#[no_mangle]
pub unsafe extern "C" fn chb_verify_random(
    trials: u64,
    seed: u64,
    g_max: u32,
    s_max: u32,
    r_max: u32,
    agree: *mut bool,
    out: *mut *mut c_char,
) -> ChbStatus {
    if agree.is_null() || out.is_null() {
        set_last_error("out pointer is null");
        return ChbStatus::NullArgument;
    }
    if g_max == 0 || s_max == 0 || (r_max as usize) < s_max as usize + 1 {
        set_last_error("need g_max >= 1, s_max >= 1 and r_max >= s_max + 1");
        return ChbStatus::InvalidArgument;
    }
    let config = SamplerConfig::new(g_max as usize, s_max as usize, r_max as usize);
    match report::verify_random_report(trials as usize, seed, &config) {
        Ok((text, ok)) => {
            *agree = ok;
            let status = give_string(out, text);
            if ok {
                status
            } else {
                set_last_error("theorem equivalence counterexample");
                ChbStatus::Disagreement
            }
        }
        Err(e) => {
            set_last_error(e.to_string());
            ChbStatus::InvalidArgument
        }
    }
}
