//! C ABI over the posviro library.
//!
//! Objects cross the boundary as opaque handles created by the constructor
//! functions and released with the matching `*_free`. Every function returns a
//! [`PosviroStatus`]; on failure [`posviro_last_error`] describes the cause.
//! Strings returned through `char **` must be released with
//! [`posviro_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use posviro::commands::cyclic_family;
use posviro::complex::{is_positively_decorated, SimplicialComplex};
use posviro::completion::{decorate, CompletionOptions};
use posviro::families::count_snd;
use posviro::io::to_json;
use posviro::linalg::ratio;
use posviro::numerics::{certified_positive_count, CountOptions};
use posviro::viro::ViroSystem;
use posviro::{Error, RationalMatrix};

/// Result codes; the first four agree with the exit codes of the command line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosviroStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidArgument = 2,
    Numeric = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A pure simplicial complex.
pub struct PosviroComplex(SimplicialComplex);

/// A matrix of exact rationals.
pub struct PosviroMatrix(RationalMatrix);

/// A Viro system with symbolic parameter `t`.
pub struct PosviroSystem(ViroSystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(PosviroStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Numeric(_) | Error::Singular | Error::RankDeficient => PosviroStatus::Numeric,
            _ => PosviroStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(PosviroStatus::InvalidArgument, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(PosviroStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PosviroStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PosviroStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            PosviroStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(PosviroStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(PosviroStatus::Panic, "nul in output".into()))?;
    put(out, c.into_raw())
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(value)))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn posviro_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn posviro_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn posviro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a complex from `{"dimension", "n_vertices", "facets"}` JSON.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_complex_from_json(json: *const c_char, out: *mut *mut PosviroComplex) -> PosviroStatus {
    guard(|| {
        let k: SimplicialComplex = serde_json::from_str(text(json, "json")?)?;
        put_handle(out, PosviroComplex(k))
    })
}

/// The minimal triangulation of the cyclic polytope `C(n, d)`, or its
/// bipartite subcomplex when `bipartite` is true.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_cyclic_complex(
    n: usize,
    d: usize,
    bipartite: bool,
    out: *mut *mut PosviroComplex,
) -> PosviroStatus {
    guard(|| {
        let f = cyclic_family(n, d, None, bipartite)?;
        put_handle(out, PosviroComplex(f.complex))
    })
}

/// # Safety
/// `k` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_complex_facet_count(k: *const PosviroComplex, out: *mut usize) -> PosviroStatus {
    guard(|| put(out, borrow(k, "complex")?.0.len()))
}

/// # Safety
/// `k` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_complex_to_json(k: *const PosviroComplex, out: *mut *mut c_char) -> PosviroStatus {
    guard(|| put_string(out, to_json(&borrow(k, "complex")?.0)?))
}

/// # Safety
/// `k` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn posviro_complex_free(k: *mut PosviroComplex) {
    free(k)
}

/// Parses a matrix from `{"rows", "cols", "entries"}` JSON with entries as
/// strings such as `"-3/4"`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_matrix_from_json(json: *const c_char, out: *mut *mut PosviroMatrix) -> PosviroStatus {
    guard(|| {
        let m: RationalMatrix = serde_json::from_str(text(json, "json")?)?;
        put_handle(out, PosviroMatrix(m))
    })
}

/// # Safety
/// `m` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_matrix_to_json(m: *const PosviroMatrix, out: *mut *mut c_char) -> PosviroStatus {
    guard(|| put_string(out, to_json(&borrow(m, "matrix")?.0)?))
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn posviro_matrix_free(m: *mut PosviroMatrix) {
    free(m)
}

/// Writes whether `c` positively decorates every facet of `k`.
///
/// # Safety
/// `k` and `c` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_is_decorated(
    k: *const PosviroComplex,
    c: *const PosviroMatrix,
    out: *mut bool,
) -> PosviroStatus {
    guard(|| {
        let r = is_positively_decorated(&borrow(k, "complex")?.0, &borrow(c, "matrix")?.0)?;
        put(out, r.decorated)
    })
}

/// Searches for an exactly verified decoration. Returns `CheckFailed` and
/// leaves `out` untouched when none is found.
///
/// # Safety
/// `k` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_decorate(
    k: *const PosviroComplex,
    restarts: usize,
    seed: u64,
    out: *mut *mut PosviroMatrix,
) -> PosviroStatus {
    guard(|| {
        let k = &borrow(k, "complex")?.0;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let opts = CompletionOptions {
            restarts,
            seed,
            ..CompletionOptions::default()
        };
        let o = decorate(k, &opts)?;
        match o.matrix {
            Some(c) => put_handle(out, PosviroMatrix(c)),
            None if o.obstruction.is_some() => Err(Fail(
                PosviroStatus::CheckFailed,
                "the dual graph is not bipartite".into(),
            )),
            None => Err(Fail(
                PosviroStatus::CheckFailed,
                format!("no verified decoration in {} restarts", o.restarts.len()),
            )),
        }
    })
}

/// Parses a Viro system from `{"dimension", "points", "coefficients", "heights"}` JSON.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_system_from_json(json: *const c_char, out: *mut *mut PosviroSystem) -> PosviroStatus {
    guard(|| {
        let s: ViroSystem = serde_json::from_str(text(json, "json")?)?;
        put_handle(out, PosviroSystem(s))
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn posviro_system_free(s: *mut PosviroSystem) {
    free(s)
}

/// Number of distinct positive roots found near the facet predictions at
/// `t = t_num / t_den`, using `precision` bits (0 for the default).
///
/// # Safety
/// `s` and `k` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_count_positive_roots(
    s: *const PosviroSystem,
    k: *const PosviroComplex,
    t_num: i64,
    t_den: i64,
    precision: usize,
    out: *mut usize,
) -> PosviroStatus {
    guard(|| {
        let (s, k) = (&borrow(s, "system")?.0, &borrow(k, "complex")?.0);
        if t_den == 0 {
            return Err(Fail(PosviroStatus::InvalidArgument, "zero denominator".into()));
        }
        let opts = if precision == 0 {
            CountOptions::default()
        } else {
            CountOptions::with_precision(precision)
        };
        let r = certified_positive_count(s, k, &ratio(t_num, t_den), &opts)?;
        put(out, r.count)
    })
}

/// Number of facets of `S_{n,d}` as a decimal string.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn posviro_count_snd(n: usize, d: usize, out: *mut *mut c_char) -> PosviroStatus {
    guard(|| put_string(out, count_snd(n, d)?.to_string()))
}
