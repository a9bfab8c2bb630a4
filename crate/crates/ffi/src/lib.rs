//! C ABI for fuzznorm.
//!
//! Every function returns an `FN_*` status code and writes results through
//! out-pointers. Handles (`FnConnective`, `FnReport`) and strings returned
//! by the library are owned by the caller and released with the matching
//! `*_free` function. After a non-zero status, `fn_last_error_message`
//! describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fuzznorm::connective::Connective;
use fuzznorm::engine::{
    check_archimedean, check_axioms, check_cancellation, check_limit_property,
    check_strict_monotonicity, classify_uninorm,
};
use fuzznorm::fuzzy::{check_fuzzy_submonoid, CarrierMonoid, KindTag, SubstructureKind};
use fuzznorm::io::load_subset;
use fuzznorm::report::{PropertyReport, SearchBudget, Verdict};
use fuzznorm::scalar::{Domain, UnitScalar};
use fuzznorm::suite::run_suite;
use fuzznorm::Error;

pub const FN_OK: i32 = 0;
pub const FN_ERR_NULL: i32 = 1;
pub const FN_ERR_UTF8: i32 = 2;
pub const FN_ERR_CONFIG: i32 = 3;
pub const FN_ERR_PARSE: i32 = 4;
pub const FN_ERR_DOMAIN: i32 = 5;
pub const FN_ERR_BUDGET: i32 = 6;
pub const FN_ERR_NOT_TOTAL: i32 = 7;
pub const FN_ERR_IO: i32 = 8;
pub const FN_ERR_PANIC: i32 = 99;

pub const FN_VERDICT_HOLDS: i32 = 0;
pub const FN_VERDICT_FAILS: i32 = 1;
pub const FN_VERDICT_VACUOUS: i32 = 2;

/// A parsed connective.
pub struct FnConnective {
    inner: Connective,
}

/// A property report.
pub struct FnReport {
    inner: PropertyReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::Config(_) => FN_ERR_CONFIG,
        Error::Parse { .. } => FN_ERR_PARSE,
        Error::BudgetExceeded { .. } => FN_ERR_BUDGET,
        Error::NotTotal { .. } => FN_ERR_NOT_TOTAL,
        Error::Io(_) => FN_ERR_IO,
        _ => FN_ERR_DOMAIN,
    }
}

struct Fail(i32);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(code_for(&e))
    }
}

fn null(what: &str) -> Fail {
    set_error(format!("{what} is NULL"));
    Fail(FN_ERR_NULL)
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FN_OK,
        Ok(Err(Fail(code))) => code,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            FN_ERR_PANIC
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        Fail(FN_ERR_UTF8)
    })
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn domain(grid: u32) -> Result<Domain, Fail> {
    if grid < 2 {
        set_error("grid resolution must be at least 2".into());
        return Err(Fail(FN_ERR_CONFIG));
    }
    Ok(Domain::grid(grid)?)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::HoldsOnDomain => FN_VERDICT_HOLDS,
        Verdict::Fails => FN_VERDICT_FAILS,
        Verdict::Vacuous => FN_VERDICT_VACUOUS,
    }
}

/// Parses a connective id such as `tnorm:lukasiewicz` or
/// `uninorm:umin(1/2,product,probsum)`.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fn_connective_parse(
    id: *const c_char,
    out: *mut *mut FnConnective,
) -> i32 {
    guard(|| {
        let id = str_arg(id, "id")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner: Connective = id.parse()?;
        *out = Box::into_raw(Box::new(FnConnective { inner }));
        Ok(())
    })
}

/// # Safety
/// `c` must come from `fn_connective_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fn_connective_free(c: *mut FnConnective) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// The canonical id of `c`, as a new string.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fn_connective_name(c: *const FnConnective, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("connective"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = out_string(c.inner.name().to_string());
        Ok(())
    })
}

/// `C(x, y)` for rationals written `p/q`; the result is written as `p/q`.
///
/// # Safety
/// `c` must be a live handle, `x` and `y` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fn_connective_eval(
    c: *const FnConnective,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("connective"))?;
        let x: UnitScalar = str_arg(x, "x")?.parse()?;
        let y: UnitScalar = str_arg(y, "y")?.parse()?;
        if out.is_null() {
            return Err(null("out"));
        }
        if !(c.inner.supports(&x) && c.inner.supports(&y)) {
            return Err(Error::NotTotal {
                element: format!("{}({x}, {y})", c.inner.name()),
            }
            .into());
        }
        *out = out_string(c.inner.eval(&x, &y).to_string());
        Ok(())
    })
}

/// Checks one property of `c` on the grid `{i/grid}`: `axioms`, `strict`,
/// `cancel`, `condcancel`, `archimedean`, `limit` or `classify`.
///
/// # Safety
/// `c` must be a live handle, `property` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fn_check_property(
    c: *const FnConnective,
    property: *const c_char,
    grid: u32,
    out: *mut *mut FnReport,
) -> i32 {
    guard(|| {
        let c = &c.as_ref().ok_or_else(|| null("connective"))?.inner;
        let property = str_arg(property, "property")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = domain(grid)?;
        let b = SearchBudget::default();
        let inner = match property {
            "axioms" => check_axioms(c, &d, &b)?,
            "strict" => check_strict_monotonicity(c, &d, &b),
            "cancel" => check_cancellation(c, &d, false, &b),
            "condcancel" => check_cancellation(c, &d, true, &b),
            "archimedean" => check_archimedean(c, &d, &b),
            "limit" => check_limit_property(c, &d, &b),
            "classify" => classify_uninorm(c, &d, &b)?,
            other => return Err(Error::Config(format!("unknown property '{other}'")).into()),
        };
        *out = Box::into_raw(Box::new(FnReport { inner }));
        Ok(())
    })
}

/// Checks `mu` (`builtin:identity`, ... or a JSON file path) as a fuzzy
/// substructure of `([0,1], carrier)` of the given kind. The a-, u- and
/// f-submonoid kinds use the carrier operation as combiner.
///
/// # Safety
/// All pointers must be valid: strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fn_check_substructure(
    mu: *const c_char,
    carrier: *const FnConnective,
    kind: *const c_char,
    grid: u32,
    out: *mut *mut FnReport,
) -> i32 {
    guard(|| {
        let mu = load_subset(str_arg(mu, "mu")?)?;
        let op = carrier
            .as_ref()
            .ok_or_else(|| null("carrier"))?
            .inner
            .clone();
        let kind: KindTag = str_arg(kind, "kind")?.parse()?;
        if out.is_null() {
            return Err(null("out"));
        }
        let combiner = kind.needs_combiner().then(|| op.clone());
        let carrier = CarrierMonoid::interval(domain(grid)?, op)?;
        let inner = check_fuzzy_submonoid(
            &mu,
            &carrier,
            &SubstructureKind::new(kind, combiner)?,
            &SearchBudget::default(),
        )?;
        *out = Box::into_raw(Box::new(FnReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn fn_report_verdict(r: *const FnReport, out: *mut i32) -> i32 {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = verdict_code(r.inner.verdict);
        Ok(())
    })
}

/// Number of witnesses recorded directly on the report.
///
/// # Safety
/// `r` must be a live report handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fn_report_witness_count(r: *const FnReport, out: *mut usize) -> i32 {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = r.inner.witnesses.len();
        Ok(())
    })
}

/// The report as JSON, as a new string.
///
/// # Safety
/// `r` must be a live report handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fn_report_json(r: *const FnReport, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = out_string(r.inner.to_json());
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fn_report_free(r: *mut FnReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs the proposition suite. `only` is a comma-separated list of row ids,
/// or NULL for every row. Writes the JSON summary and the suite exit code
/// (0 confirmed, 1 counterexample, 2 skipped).
///
/// # Safety
/// `only` must be NULL or NUL-terminated; `json_out` and `exit_out` writable.
#[no_mangle]
pub unsafe extern "C" fn fn_run_suite(
    grid: u32,
    only: *const c_char,
    json_out: *mut *mut c_char,
    exit_out: *mut i32,
) -> i32 {
    guard(|| {
        let only: Option<Vec<String>> = if only.is_null() {
            None
        } else {
            Some(
                str_arg(only, "only")?
                    .split(',')
                    .map(str::to_string)
                    .collect(),
            )
        };
        if json_out.is_null() || exit_out.is_null() {
            return Err(null("out"));
        }
        let r = run_suite(grid, &SearchBudget::default(), only.as_deref())?;
        *exit_out = r.exit_code();
        *json_out = out_string(r.to_json());
        Ok(())
    })
}

/// Message for the last failure on this thread as a new string, or NULL.
#[no_mangle]
pub extern "C" fn fn_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .clone()
            .map(out_string)
            .unwrap_or(ptr::null_mut())
    })
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn fn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version; static, do not free.
#[no_mangle]
pub extern "C" fn fn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
