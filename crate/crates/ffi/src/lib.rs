//! C ABI over `chtg-core`.
//!
//! Every entry point returns a [`ChtgStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `_free`
//! function, and strings returned by the library are released with
//! [`chtg_string_free`]. After a failure, [`chtg_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chtg_core::certify::{self, Certificate, SearchOptions, SearchReport, Verdict};
use chtg_core::classify::{classify_trace, goldman_discriminant, IsometryClass, BOUNDARY_TOL};
use chtg_core::exactnum::{self, CycloElement, PrecisionPolicy};
use chtg_core::triangle::{trace_formula, TriangleParams};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChtgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ModulusMismatch = 3,
    DivisionByZero = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChtgClass {
    RegularElliptic = 0,
    Loxodromic = 1,
    Boundary = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChtgVerdict {
    NonDiscreteOrNonFaithful = 0,
    NotApplicable = 1,
    Inconclusive = 2,
}

pub struct ChtgCertificate(Certificate);
pub struct ChtgSearchReport(SearchReport);
pub struct ChtgCyclo(CycloElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &chtg_core::Error) -> ChtgStatus {
    use chtg_core::Error::*;
    match e {
        ModulusMismatch { .. } | NotDivisible { .. } => ChtgStatus::ModulusMismatch,
        DivisionByZero => ChtgStatus::DivisionByZero,
        _ => ChtgStatus::InvalidArgument,
    }
}

/// Run `f`, turning errors and panics into status codes.
fn guard<F>(f: F) -> ChtgStatus
where
    F: FnOnce() -> Result<(), (ChtgStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ChtgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            ChtgStatus::Panic
        }
    }
}

fn core<T>(r: chtg_core::Result<T>) -> Result<T, (ChtgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), (ChtgStatus, String)> {
    if p.is_null() {
        Err((ChtgStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn invalid(msg: &str) -> (ChtgStatus, String) {
    (ChtgStatus::InvalidArgument, msg.to_string())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn chtg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chtg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `τ(α)` for the `(m, m, ∞)` triangle.
///
/// # Safety
/// `re` and `im` are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_trace(m: u32, alpha: f64, re: *mut f64, im: *mut f64) -> ChtgStatus {
    guard(|| {
        non_null(re, "re")?;
        non_null(im, "im")?;
        let tau = trace_formula(&core(TriangleParams::mm_inf(m, alpha))?);
        *re = tau.re;
        *im = tau.im;
        Ok(())
    })
}

/// Isometry class and discriminant of `τ(α)`; `f` may be null.
///
/// # Safety
/// `class` is valid for writes; `f` is null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_classify(m: u32, alpha: f64, class: *mut ChtgClass, f: *mut f64) -> ChtgStatus {
    guard(|| {
        non_null(class, "class")?;
        let tau = trace_formula(&core(TriangleParams::mm_inf(m, alpha))?);
        *class = match classify_trace(tau, BOUNDARY_TOL) {
            IsometryClass::RegularElliptic => ChtgClass::RegularElliptic,
            IsometryClass::Loxodromic => ChtgClass::Loxodromic,
            IsometryClass::Boundary => ChtgClass::Boundary,
        };
        if !f.is_null() {
            *f = goldman_discriminant(tau);
        }
        Ok(())
    })
}

/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_euler_phi(n: u64, out: *mut u64) -> ChtgStatus {
    guard(|| {
        non_null(out, "out")?;
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        *out = exactnum::euler_phi(n);
        Ok(())
    })
}

/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_moebius(n: u64, out: *mut i64) -> ChtgStatus {
    guard(|| {
        non_null(out, "out")?;
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        *out = exactnum::moebius(n);
        Ok(())
    })
}

/// Certificate for `(m, m, ∞)` at angular invariant `alpha`.
///
/// # Safety
/// `out` is valid for writes; on success it receives a handle to release
/// with [`chtg_certificate_free`].
#[no_mangle]
pub unsafe extern "C" fn chtg_certify(
    m: u32,
    alpha: f64,
    n_max: u64,
    precision_bits: u32,
    out: *mut *mut ChtgCertificate,
) -> ChtgStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        if !(53..=4096).contains(&precision_bits) {
            return Err(invalid("precision_bits must lie in [53, 4096]"));
        }
        let params = core(TriangleParams::mm_inf(m, alpha))?;
        let opts = SearchOptions {
            symmetry: true,
            policy: PrecisionPolicy::starting_at(precision_bits),
        };
        let cert = core(certify::certify_with(&params, n_max, &opts))?;
        *out = Box::into_raw(Box::new(ChtgCertificate(cert)));
        Ok(())
    })
}

/// # Safety
/// `cert` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_certificate_verdict(
    cert: *const ChtgCertificate,
    out: *mut ChtgVerdict,
) -> ChtgStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out, "out")?;
        *out = match (*cert).0.verdict {
            Verdict::NonDiscreteOrNonFaithful => ChtgVerdict::NonDiscreteOrNonFaithful,
            Verdict::NotApplicable => ChtgVerdict::NotApplicable,
            Verdict::Inconclusive => ChtgVerdict::Inconclusive,
        };
        Ok(())
    })
}

/// JSON transcript; release with [`chtg_string_free`].
///
/// # Safety
/// `cert` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_certificate_json(
    cert: *const ChtgCertificate,
    out: *mut *mut c_char,
) -> ChtgStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out, "out")?;
        *out = into_c_string((*cert).0.to_json());
        Ok(())
    })
}

/// # Safety
/// `cert` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chtg_certificate_free(cert: *mut ChtgCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Exhaustive search for orders `n ≤ n_max`; `symmetry` non-zero reduces by orbits.
///
/// # Safety
/// `out` is valid for writes; on success it receives a handle to release
/// with [`chtg_search_free`].
#[no_mangle]
pub unsafe extern "C" fn chtg_search(
    m: u32,
    n_max: u64,
    symmetry: i32,
    out: *mut *mut ChtgSearchReport,
) -> ChtgStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let opts = SearchOptions {
            symmetry: symmetry != 0,
            ..SearchOptions::default()
        };
        let report = core(certify::run_search(m, n_max, &opts))?;
        *out = Box::into_raw(Box::new(ChtgSearchReport(report)));
        Ok(())
    })
}

/// Counts from a search; any out pointer may be null.
///
/// # Safety
/// `report` is a live handle; non-null out pointers are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_search_counts(
    report: *const ChtgSearchReport,
    examined: *mut u64,
    rejected: *mut u64,
    survivors: *mut u64,
) -> ChtgStatus {
    guard(|| {
        non_null(report, "report")?;
        let r = &(*report).0;
        if !examined.is_null() {
            *examined = r.candidates_examined;
        }
        if !rejected.is_null() {
            *rejected = r.rejections.total();
        }
        if !survivors.is_null() {
            *survivors = r.survivors.len() as u64;
        }
        Ok(())
    })
}

/// # Safety
/// `report` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chtg_search_free(report: *mut ChtgSearchReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

unsafe fn put_cyclo(out: *mut *mut ChtgCyclo, a: CycloElement) {
    *out = Box::into_raw(Box::new(ChtgCyclo(a)));
}

/// `ω_N^j` in `ℚ[ω_N]`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_cyclo_root_of_unity(
    order: u64,
    j: i64,
    out: *mut *mut ChtgCyclo,
) -> ChtgStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        if order == 0 {
            return Err(invalid("order must be positive"));
        }
        put_cyclo(out, exactnum::make_root_of_unity(order, j));
        Ok(())
    })
}

/// # Safety
/// `a`, `b` are live handles; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_cyclo_add(
    a: *const ChtgCyclo,
    b: *const ChtgCyclo,
    out: *mut *mut ChtgCyclo,
) -> ChtgStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(b, "b")?;
        non_null(out, "out")?;
        *out = ptr::null_mut();
        put_cyclo(out, core((*a).0.add(&(*b).0))?);
        Ok(())
    })
}

/// # Safety
/// `a`, `b` are live handles; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_cyclo_mul(
    a: *const ChtgCyclo,
    b: *const ChtgCyclo,
    out: *mut *mut ChtgCyclo,
) -> ChtgStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(b, "b")?;
        non_null(out, "out")?;
        *out = ptr::null_mut();
        put_cyclo(out, core((*a).0.mul(&(*b).0))?);
        Ok(())
    })
}

/// `σ_k(a)`; `k` must be a unit modulo the field's order.
///
/// # Safety
/// `a` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_cyclo_galois(a: *const ChtgCyclo, k: i64, out: *mut *mut ChtgCyclo) -> ChtgStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(out, "out")?;
        *out = ptr::null_mut();
        put_cyclo(out, core((*a).0.galois(k))?);
        Ok(())
    })
}

/// Writes 1 if `a` is zero, else 0.
///
/// # Safety
/// `a` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_cyclo_is_zero(a: *const ChtgCyclo, out: *mut i32) -> ChtgStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(out, "out")?;
        *out = i32::from((*a).0.is_zero());
        Ok(())
    })
}

/// `{"N": .., "coeffs": [..]}`; release with [`chtg_string_free`].
///
/// # Safety
/// `a` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn chtg_cyclo_json(a: *const ChtgCyclo, out: *mut *mut c_char) -> ChtgStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(out, "out")?;
        let s = serde_json::to_string(&(*a).0).map_err(|e| invalid(&e.to_string()))?;
        *out = into_c_string(s);
        Ok(())
    })
}

/// # Safety
/// `a` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chtg_cyclo_free(a: *mut ChtgCyclo) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}
