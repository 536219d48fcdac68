//! C ABI for `eqtheta`.
//!
//! Every fallible call returns an [`EqtStatus`]; on anything other than
//! `EQT_STATUS_OK` a message is available from [`eqt_last_error`] on the same
//! thread. Strings returned by the library are owned by the caller and must be
//! released with [`eqt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eqtheta::cli::{parse_config, report_json, SweepConfig};
use eqtheta::congruences::{sweep, verify_kummer, verify_minus_congruence, CongruenceReport, FaultInjection, Status};
use eqtheta::lfunctions::{minimal_s, theta};
use eqtheta::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    MathError = 3,
    OutOfRange = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqtOutcome {
    Verified = 0,
    Failed = 1,
    Skipped = 2,
}

/// Opaque theta element: coefficients ordered by ascending label `a` of `sigma_a`.
pub struct EqtTheta {
    labels: Vec<u64>,
    coefficients: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> EqtStatus {
    match e {
        Error::InvalidArgument(_)
        | Error::InvalidPlaces(_)
        | Error::Config(_)
        | Error::NotCoprime { .. }
        | Error::NonPositiveOnly(_) => EqtStatus::InvalidArgument,
        _ => EqtStatus::MathError,
    }
}

fn guard(body: impl FnOnce() -> Result<(), (EqtStatus, String)>) -> EqtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => EqtStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EqtStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (EqtStatus, String) {
    (status_of(&e), e.to_string())
}

/// # Safety
/// `ptr` must be null only when `len` is zero, and otherwise point to `len` values.
unsafe fn slice<'a>(ptr: *const u64, len: usize) -> Result<&'a [u64], (EqtStatus, String)> {
    if len == 0 {
        Ok(&[])
    } else if ptr.is_null() {
        Err((EqtStatus::NullPointer, "null array with nonzero length".into()))
    } else {
        Ok(std::slice::from_raw_parts(ptr, len))
    }
}

fn outcome(report: &CongruenceReport) -> EqtOutcome {
    match report.status {
        Status::Verified => EqtOutcome::Verified,
        Status::Failed => EqtOutcome::Failed,
        Status::Skipped => EqtOutcome::Skipped,
    }
}

/// The message of the last failed call on this thread. Valid until the next
/// call into the library from this thread; do not free.
#[no_mangle]
pub extern "C" fn eqt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Compute `theta_{S,T}(j)` for `Q(mu_f)` with `S` the minimal set plus `s_extra`.
///
/// # Safety
/// Array arguments must be valid for their lengths and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_theta_new(
    f: u64,
    t: *const u64,
    t_len: usize,
    s_extra: *const u64,
    s_extra_len: usize,
    j: i64,
    out: *mut *mut EqtTheta,
) -> EqtStatus {
    guard(|| {
        if out.is_null() {
            return Err((EqtStatus::NullPointer, "out is null".into()));
        }
        let t = slice(t, t_len)?;
        let extra = slice(s_extra, s_extra_len)?;
        let th = theta(f, &minimal_s(f, extra), t, j).map_err(lib_err)?;
        let group = th.group().clone();
        let mut rows: Vec<(u64, String)> = (0..group.order())
            .map(|x| (group.label(x), th.value().coeff(x).to_string()))
            .collect();
        rows.sort();
        let handle = EqtTheta {
            labels: rows.iter().map(|r| r.0).collect(),
            coefficients: rows.into_iter().map(|r| CString::new(r.1).expect("no NUL in numbers")).collect(),
        };
        *out = Box::into_raw(Box::new(handle));
        Ok(())
    })
}

/// Number of coefficients, or 0 for a null handle.
///
/// # Safety
/// `theta` must be null or a live handle from [`eqt_theta_new`].
#[no_mangle]
pub unsafe extern "C" fn eqt_theta_len(theta: *const EqtTheta) -> usize {
    theta.as_ref().map_or(0, |t| t.labels.len())
}

/// Label `a` of the `index`-th group element `sigma_a`.
///
/// # Safety
/// `theta` must be a live handle and `label` writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_theta_label(theta: *const EqtTheta, index: usize, label: *mut u64) -> EqtStatus {
    guard(|| {
        let (Some(th), false) = (theta.as_ref(), label.is_null()) else {
            return Err((EqtStatus::NullPointer, "null argument".into()));
        };
        let l = th
            .labels
            .get(index)
            .ok_or((EqtStatus::OutOfRange, format!("index {index} out of range")))?;
        *label = *l;
        Ok(())
    })
}

/// The `index`-th coefficient as a `num/den` string; free with [`eqt_string_free`].
/// Returns null on error.
///
/// # Safety
/// `theta` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqt_theta_coefficient(theta: *const EqtTheta, index: usize) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| {
        let th = theta
            .as_ref()
            .ok_or((EqtStatus::NullPointer, "null handle".into()))?;
        let c = th
            .coefficients
            .get(index)
            .ok_or((EqtStatus::OutOfRange, format!("index {index} out of range")))?;
        result = c.clone().into_raw();
        Ok(())
    });
    result
}

/// # Safety
/// `theta` must be null or a handle from [`eqt_theta_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eqt_theta_free(theta: *mut EqtTheta) {
    if !theta.is_null() {
        drop(Box::from_raw(theta));
    }
}

/// Check the minus-part congruence between weights `j` and `k` for `Q(mu_f)`
/// modulo `p^n`, with minimal `S` and the given `T`.
///
/// # Safety
/// `t` must be valid for `t_len` values and `outcome_out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_verify_minus(
    f: u64,
    p: u64,
    n: u32,
    t: *const u64,
    t_len: usize,
    j: i64,
    k: i64,
    outcome_out: *mut EqtOutcome,
) -> EqtStatus {
    guard(|| {
        if outcome_out.is_null() {
            return Err((EqtStatus::NullPointer, "outcome_out is null".into()));
        }
        let t = slice(t, t_len)?;
        let report = verify_minus_congruence(f, p, n, &minimal_s(f, &[]), t, j, k).map_err(lib_err)?;
        if let Some(reason) = &report.reason {
            set_error(reason.clone());
        }
        *outcome_out = outcome(&report);
        Ok(())
    })
}

/// Kummer's congruence `(1 - p^{-j}) zeta(j) = (1 - p^{-k}) zeta(k) mod p^n`.
///
/// # Safety
/// `outcome_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_kummer(p: u64, n: u32, j: i64, k: i64, outcome_out: *mut EqtOutcome) -> EqtStatus {
    guard(|| {
        if outcome_out.is_null() {
            return Err((EqtStatus::NullPointer, "outcome_out is null".into()));
        }
        let report = verify_kummer(p, n, j, k);
        if let Some(reason) = &report.reason {
            set_error(reason.clone());
        }
        *outcome_out = outcome(&report);
        Ok(())
    })
}

/// Run a sweep and return the JSON report. `config` is the text of a sweep
/// config, or null for the built-in default grid. Returns null on error.
///
/// # Safety
/// `config` must be null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn eqt_sweep_json(config: *const c_char, seed: u64, inject_fault: bool) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| {
        let cfg = if config.is_null() {
            SweepConfig::default()
        } else {
            let text = CStr::from_ptr(config)
                .to_str()
                .map_err(|_| (EqtStatus::InvalidArgument, "config is not UTF-8".into()))?;
            parse_config(text).map_err(lib_err)?
        };
        let fault = if inject_fault {
            FaultInjection::CorruptTheta
        } else {
            FaultInjection::None
        };
        let json = report_json(&sweep(&cfg.grid, fault), seed);
        result = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    });
    result
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eqt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
