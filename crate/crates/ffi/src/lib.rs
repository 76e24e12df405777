//! C ABI over the exact free-energy engines: opaque handles, status codes,
//! and UTF-8 strings the caller releases through [`tg_string_free`].
//!
//! Every entry point is panic-safe: engine panics are caught and surface as
//! `TG_STATUS_INTERNAL`, with a message retrievable via [`tg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use topgrav::algebra::json::poly_to_json;
use topgrav::algebra::{Poly, VarId};
use topgrav::tseries::Model;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TgStatus {
    /// Success.
    Ok = 0,
    /// A verification suite ran and found failures.
    VerifyFailed = 1,
    /// Invalid arguments (unknown model, bad genus, null pointer).
    Usage = 2,
    /// Internal failure; see `tg_last_error`.
    Internal = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

/// A computed free energy: model, genus (or 't Hooft order), and the exact
/// polynomial. Opaque to C callers.
pub struct TgFreeEnergy {
    model: Model,
    genus: u32,
    poly: Poly,
}

fn model_from_ptr(model: *const c_char) -> Option<Model> {
    if model.is_null() {
        return None;
    }
    let name = unsafe { CStr::from_ptr(model) }.to_str().ok()?;
    Model::parse(name)
}

fn to_owned_cstr(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Compute the closed free energy of `model` ("1d", "hmm", "2d") at
/// `genus >= 2`, or the fat tower ("hmm-fat") at 't Hooft order
/// `genus >= 2`. On success `*out` owns a handle to release with
/// [`tg_free_energy_free`].
///
/// # Safety
/// `model` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_free_energy_compute(
    model: *const c_char,
    genus: u32,
    out: *mut *mut TgFreeEnergy,
) -> TgStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return TgStatus::Usage;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(model) = model_from_ptr(model) else {
        set_error("unknown model".into());
        return TgStatus::Usage;
    };
    if genus < 2 {
        set_error("closed polynomials exist for genus >= 2 only".into());
        return TgStatus::Usage;
    }
    let computed = catch_unwind(AssertUnwindSafe(|| match model {
        Model::OneDim => topgrav::engines::one_dim::free_energy(genus)
            .map(|p| p.as_ref().clone()),
        Model::Hmm => topgrav::engines::matrix_model::free_energy(genus)
            .map(|p| p.as_ref().clone()),
        Model::HmmFat => topgrav::engines::matrix_model::fat_tower(genus)
            .map(|p| p.as_ref().clone()),
        Model::TwoDim => topgrav::engines::two_dim::free_energy(genus)
            .map(|p| p.as_ref().clone()),
    }));
    match computed {
        Ok(Ok(poly)) => {
            let handle = Box::new(TgFreeEnergy { model, genus, poly });
            unsafe { *out = Box::into_raw(handle) };
            TgStatus::Ok
        }
        Ok(Err(err)) => {
            set_error(err.to_string());
            TgStatus::Internal
        }
        Err(_) => {
            set_error("engine panic".into());
            TgStatus::Internal
        }
    }
}

/// Canonical JSON of the polynomial. Free with [`tg_string_free`].
///
/// # Safety
/// `handle` must be a live pointer from [`tg_free_energy_compute`].
#[no_mangle]
pub unsafe extern "C" fn tg_free_energy_json(handle: *const TgFreeEnergy) -> *mut c_char {
    if handle.is_null() {
        return ptr::null_mut();
    }
    let fe = unsafe { &*handle };
    to_owned_cstr(poly_to_json(&fe.poly))
}

/// Plain-text rendering. Free with [`tg_string_free`].
///
/// # Safety
/// `handle` must be a live pointer from [`tg_free_energy_compute`].
#[no_mangle]
pub unsafe extern "C" fn tg_free_energy_text(handle: *const TgFreeEnergy) -> *mut c_char {
    if handle.is_null() {
        return ptr::null_mut();
    }
    let fe = unsafe { &*handle };
    to_owned_cstr(format!("{}", fe.poly))
}

/// Number of monomials.
///
/// # Safety
/// `handle` must be a live pointer from [`tg_free_energy_compute`].
#[no_mangle]
pub unsafe extern "C" fn tg_free_energy_num_terms(handle: *const TgFreeEnergy) -> usize {
    if handle.is_null() {
        return 0;
    }
    unsafe { &*handle }.poly.num_terms()
}

/// Genus (or 't Hooft order) the handle was computed at.
///
/// # Safety
/// `handle` must be a live pointer from [`tg_free_energy_compute`].
#[no_mangle]
pub unsafe extern "C" fn tg_free_energy_genus(handle: *const TgFreeEnergy) -> u32 {
    if handle.is_null() {
        return 0;
    }
    unsafe { &*handle }.genus
}

/// Evaluate the matrix order `N` at an integer, in place.
///
/// # Safety
/// `handle` must be a live pointer from [`tg_free_energy_compute`].
#[no_mangle]
pub unsafe extern "C" fn tg_free_energy_eval_n(handle: *mut TgFreeEnergy, n: i64) -> TgStatus {
    if handle.is_null() {
        set_error("null handle".into());
        return TgStatus::Usage;
    }
    let fe = unsafe { &mut *handle };
    if fe.model != Model::Hmm {
        set_error("only the matrix model carries N".into());
        return TgStatus::Usage;
    }
    fe.poly = fe
        .poly
        .eval_var(VarId::big_n(), &topgrav::algebra::rat_int(n));
    TgStatus::Ok
}

/// Release a free-energy handle.
///
/// # Safety
/// `handle` must come from [`tg_free_energy_compute`] and not be used after.
#[no_mangle]
pub unsafe extern "C" fn tg_free_energy_free(handle: *mut TgFreeEnergy) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Run a verification suite ("tables", "virasoro", "homogeneity", "curves",
/// or "all"). Returns `TG_STATUS_OK` when every check passes and
/// `TG_STATUS_VERIFY_FAILED` otherwise; the report text is available
/// through `report_out` when non-null (free with [`tg_string_free`]).
///
/// # Safety
/// `suite` must be a valid NUL-terminated string; `report_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn tg_verify(
    suite: *const c_char,
    report_out: *mut *mut c_char,
) -> TgStatus {
    if !report_out.is_null() {
        unsafe { *report_out = ptr::null_mut() };
    }
    if suite.is_null() {
        set_error("null suite".into());
        return TgStatus::Usage;
    }
    let Ok(name) = (unsafe { CStr::from_ptr(suite) }).to_str() else {
        set_error("suite is not UTF-8".into());
        return TgStatus::Usage;
    };
    if !topgrav::verify::SUITES.contains(&name) {
        set_error(format!("unknown suite `{name}`"));
        return TgStatus::Usage;
    }
    let outcome = catch_unwind(AssertUnwindSafe(|| topgrav::verify::run_suite(name)));
    match outcome {
        Ok(Ok(outcome)) => {
            if !report_out.is_null() {
                unsafe { *report_out = to_owned_cstr(outcome.to_json()) };
            }
            if outcome.pass() {
                TgStatus::Ok
            } else {
                TgStatus::VerifyFailed
            }
        }
        Ok(Err(err)) => {
            set_error(err.to_string());
            TgStatus::Internal
        }
        Err(_) => {
            set_error("verification panic".into());
            TgStatus::Internal
        }
    }
}

/// Engine revision string (static; do not free).
#[no_mangle]
pub extern "C" fn tg_engine_revision() -> *const c_char {
    // NUL-terminated static
    concat!("1", "\0").as_ptr() as *const c_char
}

/// Last error message on this thread, or null. Free with [`tg_string_free`].
#[no_mangle]
pub extern "C" fn tg_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|msg| to_owned_cstr(msg.to_string_lossy().into_owned()))
            .unwrap_or(ptr::null_mut())
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must originate from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
