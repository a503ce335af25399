//! C ABI for `ideal_coxeter`.
//!
//! Polyhedra cross the boundary as opaque `IcPolyhedron` handles. Every
//! fallible call returns an [`IcStatus`]; on failure a message is stored per
//! thread and can be read with [`ic_last_error_message`]. Array outputs use
//! caller buffers: the call writes at most `cap` entries, stores the full
//! length in `*len`, and returns `IC_STATUS_BUFFER_TOO_SMALL` if it did not
//! fit.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use ideal_coxeter::combinatorics::{catalog, is_isomorphic, parse_icp, validate, PolyhedronCombinatorics};
use ideal_coxeter::glue::{glue, FaceMatching, GlueError};
use ideal_coxeter::growth::{g_polynomial, growth_series, GrowthError};
use ideal_coxeter::oracle::{bfs_growth, coxeter_matrix, OracleError};
use ideal_coxeter::roots::{growth_rate, RootError};
use ideal_coxeter::volume::{catalog_volume, VolumeError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed ICP text or unknown catalog name.
    Parse = 3,
    /// The model or request failed validation.
    Invalid = 4,
    /// Certification could not decide (e.g. a repeated root).
    Inconclusive = 5,
    /// Tolerance out of range or not reachable.
    BadTolerance = 6,
    /// A result does not fit the C integer type.
    Overflow = 7,
    /// Enumeration hit its element cap.
    ResourceLimit = 8,
    BufferTooSmall = 9,
    /// A Rust panic was caught at the boundary.
    Internal = 10,
}

/// An ideal Coxeter polyhedron (combinatorial model with dihedral labels).
pub struct IcPolyhedron(PolyhedronCombinatorics);

/// Certified growth rate: `tau` lies in `[tau_lo, tau_hi]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IcGrowthRate {
    pub tau_lo: f64,
    pub tau_hi: f64,
    /// The dominant root of g is simple.
    pub simple: bool,
    /// tau is a Perron number (certified).
    pub perron: bool,
    /// The enclosure is a single rational point.
    pub exact: bool,
}

/// Volume estimate: the true value is within `error_bound` of `value`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IcVolume {
    pub value: f64,
    pub error_bound: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

type Outcome<T> = Result<T, (IcStatus, String)>;

fn fail<T>(status: IcStatus, msg: impl Into<String>) -> Outcome<T> {
    Err((status, msg.into()))
}

/// Clears the last error, runs `f`, records any error message and maps
/// panics to `Internal`.
fn guard(f: impl FnOnce() -> Outcome<()>) -> IcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error (panic)");
            IcStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Outcome<&'a str> {
    if s.is_null() {
        return fail(IcStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (IcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn poly_arg<'a>(p: *const IcPolyhedron) -> Outcome<&'a PolyhedronCombinatorics> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or((IcStatus::NullPointer, "polyhedron handle is null".to_string()))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Outcome<&'a mut T> {
    p.as_mut()
        .ok_or((IcStatus::NullPointer, "output pointer is null".to_string()))
}

/// Copies `values` into a caller buffer under the `cap`/`len` protocol.
unsafe fn write_buffer<T: Copy>(values: &[T], buf: *mut T, cap: usize, len: *mut usize) -> Outcome<()> {
    *out_arg(len)? = values.len();
    if values.len() > cap {
        return fail(
            IcStatus::BufferTooSmall,
            format!("buffer holds {cap} entries, {} needed", values.len()),
        );
    }
    if !values.is_empty() {
        if buf.is_null() {
            return fail(IcStatus::NullPointer, "output buffer is null");
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn tolerance(tol: f64) -> Outcome<BigRational> {
    if !(tol.is_finite() && tol > 0.0) {
        return fail(
            IcStatus::BadTolerance,
            format!("tolerance {tol} must be positive and finite"),
        );
    }
    BigRational::from_float(tol).ok_or((IcStatus::BadTolerance, format!("tolerance {tol}")))
}

fn root_error(e: RootError) -> (IcStatus, String) {
    let status = match e {
        RootError::Inconclusive(_) => IcStatus::Inconclusive,
        RootError::BadTolerance => IcStatus::BadTolerance,
        _ => IcStatus::Invalid,
    };
    (status, e.to_string())
}

fn growth_error(e: GrowthError) -> (IcStatus, String) {
    (IcStatus::Invalid, e.to_string())
}

fn to_i64(x: &BigInt) -> Outcome<i64> {
    x.to_i64()
        .ok_or((IcStatus::Overflow, format!("{x} does not fit in int64")))
}

fn handle(p: PolyhedronCombinatorics, out: &mut *mut IcPolyhedron) {
    *out = Box::into_raw(Box::new(IcPolyhedron(p)));
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ic_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ic_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses ICP text into a new handle (free with [`ic_polyhedron_free`]).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ic_polyhedron_parse(text: *const c_char, out: *mut *mut IcPolyhedron) -> IcStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let text = str_arg(text, "text")?;
        let p = parse_icp(text).map_err(|e| (IcStatus::Parse, e.to_string()))?;
        handle(p, out);
        Ok(())
    })
}

/// Built-in model by name (`P1`..`P5`, `OCT`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ic_polyhedron_catalog(name: *const c_char, out: *mut *mut IcPolyhedron) -> IcStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let name = str_arg(name, "name")?;
        let p = catalog(name).map_err(|e| (IcStatus::Parse, e.to_string()))?;
        handle(p, out);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ic_polyhedron_free(p: *mut IcPolyhedron) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of faces, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ic_polyhedron_face_count(p: *const IcPolyhedron) -> usize {
    p.as_ref().map_or(0, |h| h.0.face_count())
}

/// Serialises to ICP text. Free the string with [`ic_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ic_polyhedron_to_icp(p: *const IcPolyhedron, out: *mut *mut c_char) -> IcStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let text = poly_arg(p)?.to_icp();
        *out = CString::new(text)
            .map_err(|_| (IcStatus::Internal, "ICP text contains NUL".to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs every realizability check. `*valid` reports the verdict; on
/// `false` the failing checks are in the last error message.
///
/// # Safety
/// `p` must be a live handle and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ic_validate(p: *const IcPolyhedron, valid: *mut bool) -> IcStatus {
    guard(|| {
        let valid = out_arg(valid)?;
        let v = validate(poly_arg(p)?);
        *valid = v.is_valid();
        if !*valid {
            let names: Vec<String> = v.report.failures().map(|c| c.name.clone()).collect();
            set_error(names.join(", "));
        }
        Ok(())
    })
}

/// Coefficients of g (degree 0 first, 8 entries) under the buffer protocol.
///
/// # Safety
/// `p` must be a live handle, `buf` must hold `cap` entries, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn ic_g_coefficients(
    p: *const IcPolyhedron,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> IcStatus {
    guard(|| {
        let p = poly_arg(p)?;
        let v = validate(p);
        if !v.is_valid() {
            return fail(IcStatus::Invalid, "model fails validation");
        }
        let g = g_polynomial(&v.invariants);
        let coeffs = g.coeffs().iter().map(to_i64).collect::<Outcome<Vec<_>>>()?;
        write_buffer(&coeffs, buf, cap, len)
    })
}

/// Certified growth rate with enclosure width at most `tol`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ic_growth_rate(p: *const IcPolyhedron, tol: f64, out: *mut IcGrowthRate) -> IcStatus {
    guard(|| {
        let out = out_arg(out)?;
        let p = poly_arg(p)?;
        let cert = growth_rate(p, &tolerance(tol)?).map_err(root_error)?;
        let (tau_lo, tau_hi) = cert.tau_enclosure.to_f64();
        *out = IcGrowthRate {
            tau_lo,
            tau_hi,
            simple: cert.simple,
            perron: cert.perron,
            exact: cert.is_exact(),
        };
        Ok(())
    })
}

/// Series coefficients a_0..=a_n of the growth function.
///
/// # Safety
/// `p` must be a live handle, `buf` must hold `cap` entries, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn ic_growth_series(
    p: *const IcPolyhedron,
    n: usize,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> IcStatus {
    guard(|| {
        let series = growth_series(poly_arg(p)?, n).map_err(growth_error)?;
        let values = series
            .iter()
            .map(|a| {
                a.to_u64()
                    .ok_or((IcStatus::Overflow, format!("{a} does not fit in uint64")))
            })
            .collect::<Outcome<Vec<_>>>()?;
        write_buffer(&values, buf, cap, len)
    })
}

/// Sphere sizes up to `depth` by enumerating the reflection group.
///
/// # Safety
/// `p` must be a live handle, `buf` must hold `cap` entries, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn ic_oracle_growth(
    p: *const IcPolyhedron,
    depth: usize,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> IcStatus {
    guard(|| {
        let m = coxeter_matrix(poly_arg(p)?);
        let sample = bfs_growth(&m, depth).map_err(|e| {
            let status = match e {
                OracleError::ResourceLimit { .. } => IcStatus::ResourceLimit,
                OracleError::Overflow { .. } => IcStatus::Overflow,
                OracleError::InvalidMatrix(_) => IcStatus::Invalid,
            };
            (status, e.to_string())
        })?;
        write_buffer(&sample.counts, buf, cap, len)
    })
}

/// Volume of a built-in polyhedron (`P1`..`P5`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ic_volume(name: *const c_char, tol: f64, out: *mut IcVolume) -> IcStatus {
    guard(|| {
        let out = out_arg(out)?;
        let name = str_arg(name, "name")?;
        let v = catalog_volume(name, tol).map_err(|e| {
            let status = match e {
                VolumeError::UnknownCatalog(_) => IcStatus::Parse,
                VolumeError::BadTolerance(_) | VolumeError::ToleranceUnreachable { .. } => IcStatus::BadTolerance,
                _ => IcStatus::Internal,
            };
            (status, e.to_string())
        })?;
        *out = IcVolume {
            value: v.value,
            error_bound: v.error_bound,
        };
        Ok(())
    })
}

/// Glues `b` to `a` along faces `face_a`, `face_b`. `map` holds `map_len`
/// pairs `(k, l)` flattened as `k0, l0, k1, l1, ...`: neighbour `k` of
/// `face_a` is matched with neighbour `l` of `face_b`.
///
/// # Safety
/// Handles must be live, `map` must hold `2 * map_len` entries, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ic_glue(
    a: *const IcPolyhedron,
    face_a: usize,
    b: *const IcPolyhedron,
    face_b: usize,
    map: *const usize,
    map_len: usize,
    out: *mut *mut IcPolyhedron,
) -> IcStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let (p, q) = (poly_arg(a)?, poly_arg(b)?);
        if map.is_null() && map_len > 0 {
            return fail(IcStatus::NullPointer, "map is null");
        }
        let flat = if map_len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(map, 2 * map_len)
        };
        let m = FaceMatching {
            face_p: face_a,
            face_q: face_b,
            edge_map: flat.chunks_exact(2).map(|c| (c[0], c[1])).collect(),
        };
        let g = glue(p, q, &m).map_err(|e| {
            let status = match e {
                GlueError::BadMatching(_) => IcStatus::Parse,
                _ => IcStatus::Invalid,
            };
            (status, e.to_string())
        })?;
        handle(g, out);
        Ok(())
    })
}

/// Whether two models are combinatorially isomorphic (labels included).
///
/// # Safety
/// Handles must be live and `result` valid.
#[no_mangle]
pub unsafe extern "C" fn ic_isomorphic(a: *const IcPolyhedron, b: *const IcPolyhedron, result: *mut bool) -> IcStatus {
    guard(|| {
        let result = out_arg(result)?;
        *result = is_isomorphic(poly_arg(a)?, poly_arg(b)?);
        Ok(())
    })
}
