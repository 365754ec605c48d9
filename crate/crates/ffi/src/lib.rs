//! C ABI over `zetametric`. Objects cross the boundary as opaque handles
//! created by `*_from_json` / `*_catalog` and released by `*_free`. Every
//! fallible call returns a `ZmStatus`; on failure the message is available
//! from `zm_last_error_message` on the same thread. Panics are caught and
//! reported as `ZM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use zetametric::arithmetic::{
    field_distance, kronecker_symbol, l_function_eval, FieldDistanceConfig, NumberField, QuadraticField,
};
use zetametric::convergence::{perron_sum, PerronConfig};
use zetametric::metric::{manifold_distance, MetricConfig};
use zetametric::spectra::{CatalogSpec, Spectrum};
use zetametric::{BoundKind, Error, GeneralDirichletSeries};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    Domain = 3,
    PoleOrZero = 4,
    Resource = 5,
    Panic = 6,
}

/// Opaque series handle.
pub struct ZmSeries(GeneralDirichletSeries);

/// Opaque spectrum handle.
pub struct ZmSpectrum(Spectrum);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ZmEvalResult {
    pub re: f64,
    pub im: f64,
    pub truncation_bound: f64,
    pub terms_used: usize,
    /// 1 when the truncation bound is rigorous, 0 when heuristic.
    pub rigorous: u8,
    pub tolerance_met: u8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ZmDistance {
    pub value: f64,
    pub argmax_s: f64,
    pub error_estimate: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ZmLValue {
    pub value: f64,
    pub error_bound: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ZmStatus {
    match e {
        Error::Domain(_) => ZmStatus::Domain,
        Error::PoleOrZero(_) => ZmStatus::PoleOrZero,
        Error::Resource { .. } => ZmStatus::Resource,
        Error::Invalid(_) | Error::Json(_) | Error::Io(_) => ZmStatus::InvalidInput,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ZmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ZmStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer passed for {what}"));
            ZmStatus::NullArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("panic: {msg}"));
            ZmStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::Invalid(format!("{what} is not valid UTF-8"))))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn zm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `json` must be a NUL-terminated string and `out_series` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_series_from_json(json: *const c_char, out_series: *mut *mut ZmSeries) -> ZmStatus {
    guard(|| {
        let slot = out(out_series, "out_series")?;
        *slot = ptr::null_mut();
        let d = GeneralDirichletSeries::from_json_str(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(ZmSeries(d)));
        Ok(())
    })
}

/// # Safety
/// `series` must come from `zm_series_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zm_series_free(series: *mut ZmSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// # Safety
/// `series` must be a live handle and `len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_series_len(series: *const ZmSeries, len: *mut usize) -> ZmStatus {
    guard(|| {
        *out(len, "len")? = handle(series, "series")?.0.len();
        Ok(())
    })
}

/// Evaluates at `s = re + i·im` to absolute tolerance `tol`.
///
/// # Safety
/// `series` must be a live handle and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_series_eval(
    series: *const ZmSeries,
    re: f64,
    im: f64,
    tol: f64,
    result: *mut ZmEvalResult,
) -> ZmStatus {
    guard(|| {
        let dst = out(result, "result")?;
        let r = handle(series, "series")?.0.eval(Complex64::new(re, im), tol)?;
        *dst = ZmEvalResult {
            re: r.value.re,
            im: r.value.im,
            truncation_bound: r.truncation_bound,
            terms_used: r.terms_used,
            rigorous: u8::from(r.bound_kind == BoundKind::Rigorous),
            tolerance_met: u8::from(r.tolerance_met),
        };
        Ok(())
    })
}

/// Builds a catalog spectrum from a reference such as `catalog:circle:r=0.5`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out_spectrum` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_spectrum_catalog(spec: *const c_char, out_spectrum: *mut *mut ZmSpectrum) -> ZmStatus {
    guard(|| {
        let slot = out(out_spectrum, "out_spectrum")?;
        *slot = ptr::null_mut();
        let c: CatalogSpec = text(spec, "spec")?.parse()?;
        *slot = Box::into_raw(Box::new(ZmSpectrum(c.build()?)));
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out_spectrum` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_spectrum_from_json(json: *const c_char, out_spectrum: *mut *mut ZmSpectrum) -> ZmStatus {
    guard(|| {
        let slot = out(out_spectrum, "out_spectrum")?;
        *slot = ptr::null_mut();
        let sp = Spectrum::from_json_str(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(ZmSpectrum(sp)));
        Ok(())
    })
}

/// # Safety
/// `spectrum` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zm_spectrum_free(spectrum: *mut ZmSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Zeta-ratio distance over `[gamma, gamma + 1]` with `grid_points` samples.
/// A NaN `gamma` selects the default `max(1, dim/2)`.
///
/// # Safety
/// Both spectra must be live handles and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_manifold_distance(
    left: *const ZmSpectrum,
    right: *const ZmSpectrum,
    gamma: f64,
    grid_points: usize,
    result: *mut ZmDistance,
) -> ZmStatus {
    guard(|| {
        let dst = out(result, "result")?;
        let (a, b) = (&handle(left, "left")?.0, &handle(right, "right")?.0);
        let base = if gamma.is_nan() {
            MetricConfig::for_spectra(a, b)
        } else {
            MetricConfig::with_gamma(gamma)
        };
        let r = manifold_distance(a, b, &MetricConfig { grid_points, ..base })?;
        *dst = ZmDistance {
            value: r.value,
            argmax_s: r.argmax_s,
            error_estimate: r.error_estimate,
        };
        Ok(())
    })
}

/// Distance between fields written as `Q` or `Q(sqrt:D)` over `[1, 1 + a]`.
///
/// # Safety
/// Both names must be NUL-terminated strings and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_field_distance(
    left: *const c_char,
    right: *const c_char,
    a: f64,
    result: *mut ZmDistance,
) -> ZmStatus {
    guard(|| {
        let dst = out(result, "result")?;
        let k1: NumberField = text(left, "left")?.parse()?;
        let k2: NumberField = text(right, "right")?.parse()?;
        let r = field_distance(
            &k1,
            &k2,
            &FieldDistanceConfig {
                a,
                ..Default::default()
            },
        )?;
        *dst = ZmDistance {
            value: r.value,
            argmax_s: r.argmax_s,
            error_estimate: r.error_estimate,
        };
        Ok(())
    })
}

/// `L(χ_Δ, s)` for the field `Q(√d)`, `d > 1` squarefree.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_l_value(d: u64, s: f64, tol: f64, result: *mut ZmLValue) -> ZmStatus {
    guard(|| {
        let dst = out(result, "result")?;
        let l = l_function_eval(&QuadraticField::new(d)?, s, tol)?;
        *dst = ZmLValue {
            value: l.value,
            error_bound: l.error_bound,
        };
        Ok(())
    })
}

/// Kronecker symbol `(delta/n)`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zm_kronecker(delta: i64, n: u64, result: *mut i8) -> ZmStatus {
    guard(|| {
        *out(result, "result")? = kronecker_symbol(delta, n)?;
        Ok(())
    })
}

/// Perron integral on `Re s = c` truncated at height `t_max`.
///
/// # Safety
/// `series` must be a live handle; `re` and `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn zm_perron_sum(
    series: *const ZmSeries,
    x: f64,
    c: f64,
    t_max: f64,
    re: *mut f64,
    im: *mut f64,
) -> ZmStatus {
    guard(|| {
        let (re, im) = (out(re, "re")?, out(im, "im")?);
        let cfg = PerronConfig {
            c,
            t_max,
            ..Default::default()
        };
        let r = perron_sum(&handle(series, "series")?.0, x, &cfg)?;
        *re = r.value.re;
        *im = r.value.im;
        Ok(())
    })
}
