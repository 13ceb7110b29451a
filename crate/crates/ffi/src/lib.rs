//! C interface to `pfms`.
//!
//! Models and results are opaque handles owned by the caller and released
//! with the matching `_free` function. Strings returned through out-pointers
//! are NUL-terminated UTF-8 and must be released with [`pfms_string_free`].
//! Every fallible call returns a [`PfmsStatus`]; on failure
//! [`pfms_last_error_message`] describes the problem for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pfms::dsl::{parse, serialize};
use pfms::engine::{decompose, DecompositionResult};
use pfms::export::{emit_json, render_architecture_dot};
use pfms::model::Model;

/// Parsed, validated model.
pub struct PfmsModel {
    inner: Model,
}

/// Decomposition of a model into microservices.
pub struct PfmsResult {
    inner: DecompositionResult,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfmsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    EngineError = 4,
    /// Output text contained a NUL byte and cannot be returned as a C string.
    InteriorNul = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', "\\0");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: PfmsStatus, message: impl Into<String>) -> PfmsStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> PfmsStatus) -> PfmsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(PfmsStatus::Panic, "internal panic"),
    }
}

unsafe fn write_string(text: String, out: *mut *mut c_char) -> PfmsStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            PfmsStatus::Ok
        }
        Err(_) => fail(PfmsStatus::InteriorNul, "output contains a NUL byte"),
    }
}

/// Parses `.pfm` source text.
///
/// On success `*out` receives a new model; on failure it is set to NULL and
/// the last error message lists every diagnostic, one per line.
///
/// # Safety
/// `source` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfms_model_parse(
    source: *const c_char,
    out: *mut *mut PfmsModel,
) -> PfmsStatus {
    guard(|| {
        if source.is_null() || out.is_null() {
            return fail(PfmsStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(source).to_str() else {
            return fail(PfmsStatus::InvalidUtf8, "source is not valid UTF-8");
        };
        match parse(text) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(PfmsModel { inner: model }));
                PfmsStatus::Ok
            }
            Err(diags) => {
                let lines: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
                fail(PfmsStatus::ParseError, lines.join("\n"))
            }
        }
    })
}

/// Releases a model. NULL is ignored.
///
/// # Safety
/// `model` must come from [`pfms_model_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pfms_model_free(model: *mut PfmsModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of problem diagrams, or 0 for NULL.
///
/// # Safety
/// `model` must be NULL or a live model handle.
#[no_mangle]
pub unsafe extern "C" fn pfms_model_diagram_count(model: *const PfmsModel) -> usize {
    model.as_ref().map_or(0, |m| m.inner.diagrams.len())
}

/// Canonical `.pfm` text for the model.
///
/// # Safety
/// `model` must be a live model handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfms_model_serialize(
    model: *const PfmsModel,
    out: *mut *mut c_char,
) -> PfmsStatus {
    guard(|| {
        if model.is_null() || out.is_null() {
            return fail(PfmsStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        write_string(serialize(&(*model).inner), out)
    })
}

/// Decomposes a model into microservices.
///
/// # Safety
/// `model` must be a live model handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfms_decompose(
    model: *const PfmsModel,
    out: *mut *mut PfmsResult,
) -> PfmsStatus {
    guard(|| {
        if model.is_null() || out.is_null() {
            return fail(PfmsStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        match decompose(&(*model).inner) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(PfmsResult { inner: result }));
                PfmsStatus::Ok
            }
            Err(e) => fail(PfmsStatus::EngineError, e.to_string()),
        }
    })
}

/// Releases a result. NULL is ignored.
///
/// # Safety
/// `result` must come from [`pfms_decompose`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pfms_result_free(result: *mut PfmsResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Number of microservices, or 0 for NULL.
///
/// # Safety
/// `result` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn pfms_result_microservice_count(result: *const PfmsResult) -> usize {
    result.as_ref().map_or(0, |r| r.inner.microservices.len())
}

/// Number of warnings in the decision trace, or 0 for NULL.
///
/// # Safety
/// `result` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn pfms_result_warning_count(result: *const PfmsResult) -> usize {
    result.as_ref().map_or(0, |r| r.inner.warnings().count())
}

/// The JSON report.
///
/// # Safety
/// `result` must be a live result handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfms_result_to_json(
    result: *const PfmsResult,
    out: *mut *mut c_char,
) -> PfmsStatus {
    guard(|| {
        if result.is_null() || out.is_null() {
            return fail(PfmsStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        write_string(emit_json(&(*result).inner), out)
    })
}

/// DOT graph of the whole architecture.
///
/// # Safety
/// `result` must be a live result handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pfms_result_architecture_dot(
    result: *const PfmsResult,
    out: *mut *mut c_char,
) -> PfmsStatus {
    guard(|| {
        if result.is_null() || out.is_null() {
            return fail(PfmsStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        write_string(render_architecture_dot(&(*result).inner), out)
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pfms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or NULL if the last call
/// succeeded. Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn pfms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
