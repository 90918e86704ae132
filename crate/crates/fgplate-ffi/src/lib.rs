//! C ABI for the plate analyses.
//!
//! Usage pattern: parse a JSON config into an opaque handle, run it into
//! an opaque result, query scalar values (or the full JSON), free
//! everything. All functions return [`FgplateStatus`]; on failure the
//! thread-local message from [`fgplate_last_error`] explains why.
//!
//! The generated header lives at `include/fgplate.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fgplate::config::AnalysisConfig;
use fgplate::runner::{self, ResultTable};

/// Status code of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgplateStatus {
    /// Success.
    Ok = 0,
    /// A pointer argument was null or otherwise unusable.
    InvalidArgument = 1,
    /// The configuration failed to parse or validate.
    ConfigError = 2,
    /// Assembly or solution failed.
    SolverError = 3,
    /// An index was out of range for the queried result.
    OutOfRange = 4,
}

/// Opaque parsed configuration.
pub struct FgplateConfig {
    inner: AnalysisConfig,
}

/// Opaque analysis result.
pub struct FgplateResult {
    inner: ResultTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &fgplate::Error) -> FgplateStatus {
    match err.exit_code() {
        2 => FgplateStatus::ConfigError,
        3 => FgplateStatus::SolverError,
        _ => FgplateStatus::InvalidArgument,
    }
}

/// Message describing the most recent failure on this thread, or null.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn fgplate_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fgplate_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parse and validate a JSON configuration.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns a config that must be released with
/// [`fgplate_config_free`].
#[no_mangle]
pub unsafe extern "C" fn fgplate_config_parse(
    json: *const c_char,
    out: *mut *mut FgplateConfig,
) -> FgplateStatus {
    if json.is_null() || out.is_null() {
        set_error("null argument".into());
        return FgplateStatus::InvalidArgument;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("config is not valid UTF-8".into());
            return FgplateStatus::InvalidArgument;
        }
    };
    match AnalysisConfig::from_json(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(FgplateConfig { inner }));
            FgplateStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            *out = ptr::null_mut();
            status_of(&e)
        }
    }
}

/// Release a config handle. Null is ignored.
///
/// # Safety
/// `config` must come from [`fgplate_config_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fgplate_config_free(config: *mut FgplateConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Run the analysis described by the config.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid. On success `*out`
/// owns a result that must be released with [`fgplate_result_free`].
#[no_mangle]
pub unsafe extern "C" fn fgplate_run(
    config: *const FgplateConfig,
    out: *mut *mut FgplateResult,
) -> FgplateStatus {
    if config.is_null() || out.is_null() {
        set_error("null argument".into());
        return FgplateStatus::InvalidArgument;
    }
    match runner::run(&(*config).inner) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(FgplateResult { inner }));
            FgplateStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            *out = ptr::null_mut();
            status_of(&e)
        }
    }
}

/// Release a result handle. Null is ignored.
///
/// # Safety
/// `result` must come from [`fgplate_run`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fgplate_result_free(result: *mut FgplateResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Number of rows of the given kind in the result: 0 = static, 1 = modal,
/// 2 = convergence, 3 = profiles.
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fgplate_result_row_count(
    result: *const FgplateResult,
    kind: u32,
) -> usize {
    if result.is_null() {
        return 0;
    }
    let t = &(*result).inner;
    match kind {
        0 => t.static_rows.len(),
        1 => t.modal_rows.len(),
        2 => t.convergence_rows.len(),
        3 => t.profiles.len(),
        _ => 0,
    }
}

/// Frequency parameter Ω of one mode of one modal (or convergence) row.
///
/// # Safety
/// `result` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fgplate_result_omega(
    result: *const FgplateResult,
    row: usize,
    mode: usize,
    out: *mut f64,
) -> FgplateStatus {
    if result.is_null() || out.is_null() {
        set_error("null argument".into());
        return FgplateStatus::InvalidArgument;
    }
    let t = &(*result).inner;
    let omega = t
        .modal_rows
        .get(row)
        .map(|r| &r.omega)
        .or_else(|| t.convergence_rows.get(row).map(|r| &r.omega))
        .and_then(|o| o.get(mode));
    match omega {
        Some(&v) => {
            *out = v;
            FgplateStatus::Ok
        }
        None => {
            set_error(format!("no omega at row {row}, mode {mode}"));
            FgplateStatus::OutOfRange
        }
    }
}

/// Nondimensional value of one static-row field. Field names: "u", "v",
/// "w", "sxx", "syy", "sxy", "sxz", "syz".
///
/// # Safety
/// All pointers must be valid; `field` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn fgplate_result_static_value(
    result: *const FgplateResult,
    row: usize,
    field: *const c_char,
    out: *mut f64,
) -> FgplateStatus {
    if result.is_null() || out.is_null() || field.is_null() {
        set_error("null argument".into());
        return FgplateStatus::InvalidArgument;
    }
    let rows = &(*result).inner.static_rows;
    let Some(r) = rows.get(row) else {
        set_error(format!("no static row {row}"));
        return FgplateStatus::OutOfRange;
    };
    let name = match CStr::from_ptr(field).to_str() {
        Ok(n) => n,
        Err(_) => {
            set_error("field name is not valid UTF-8".into());
            return FgplateStatus::InvalidArgument;
        }
    };
    let v = &r.values;
    let value = match name {
        "u" => v.u,
        "v" => v.v,
        "w" => v.w,
        "sxx" => v.sxx,
        "syy" => v.syy,
        "sxy" => v.sxy,
        "sxz" => v.sxz,
        "syz" => v.syz,
        other => {
            set_error(format!("unknown field '{other}'"));
            return FgplateStatus::InvalidArgument;
        }
    };
    *out = value;
    FgplateStatus::Ok
}

/// Serialize the full result (rows + provenance) to a JSON string owned
/// by the library; free it with [`fgplate_string_free`].
///
/// # Safety
/// `result` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fgplate_result_to_json(
    result: *const FgplateResult,
    out: *mut *mut c_char,
) -> FgplateStatus {
    if result.is_null() || out.is_null() {
        set_error("null argument".into());
        return FgplateStatus::InvalidArgument;
    }
    match serde_json::to_string_pretty(&(*result).inner) {
        Ok(json) => match CString::new(json) {
            Ok(c) => {
                *out = c.into_raw();
                FgplateStatus::Ok
            }
            Err(_) => {
                set_error("result JSON contains interior NUL".into());
                FgplateStatus::InvalidArgument
            }
        },
        Err(e) => {
            set_error(e.to_string());
            FgplateStatus::InvalidArgument
        }
    }
}

/// Free a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from a fgplate function that documents this contract.
#[no_mangle]
pub unsafe extern "C" fn fgplate_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
