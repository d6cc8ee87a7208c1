//! C interface to `semigroup-harmonic`.
//!
//! Objects cross the boundary as opaque handles released with their matching
//! `_free` function. Every fallible call returns an [`SghStatus`]; on failure
//! the message is available from [`sgh_last_error_message`] on the same thread.
//! Strings returned through out-parameters are owned by the caller and must be
//! released with [`sgh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use semigroup_harmonic::cli::{self, CliError};
use semigroup_harmonic::harmonic::{fourier_all, fourier_invert_all, in_basis, induced_irreps, Basis, MatrixMap};
use semigroup_harmonic::io;
use semigroup_harmonic::positivity::{bochner_check, cp_check};
use semigroup_harmonic::semigroup::InverseStructure;
use serde_json::Value;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SghStatus {
    Ok = 0,
    Internal = 1,
    Parse = 2,
    Structure = 3,
    Precondition = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A validated finite inverse semigroup with zero.
pub struct SghSemigroup {
    inner: Arc<InverseStructure>,
}

/// A matrix-valued function on a semigroup.
pub struct SghMap {
    inner: MatrixMap,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SghStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e.code {
            cli::EXIT_PARSE => SghStatus::Parse,
            cli::EXIT_STRUCTURE => SghStatus::Structure,
            cli::EXIT_PRECONDITION => SghStatus::Precondition,
            _ => SghStatus::Internal,
        };
        Failure(status, e.message)
    }
}

macro_rules! impl_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                CliError::from(e).into()
            }
        }
    )*};
}
impl_failure!(
    semigroup_harmonic::io::IoError,
    semigroup_harmonic::harmonic::HarmonicError,
    semigroup_harmonic::positivity::PositivityError
);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SghStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SghStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside the library");
            SghStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SghStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SghStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(SghStatus::NullPointer, format!("null {what} handle")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SghStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Result<(), Failure> {
    let s = serde_json::to_string(v).map_err(|e| Failure(SghStatus::Internal, e.to_string()))?;
    let c = CString::new(s).map_err(|e| Failure(SghStatus::Internal, e.to_string()))?;
    write(out, c.into_raw())
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure(SghStatus::Parse, e.to_string()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sgh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the most recent failure on this thread, or null. Valid until
/// the next library call on the same thread.
#[no_mangle]
pub extern "C" fn sgh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sgh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Load a semigroup from a builtin reference (`builtin:kind:n`) or a JSON file path.
///
/// # Safety
/// `reference` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_semigroup_load(reference: *const c_char, out: *mut *mut SghSemigroup) -> SghStatus {
    guard(|| {
        let inner = io::load_semigroup(read_str(reference)?)?;
        write(out, Box::into_raw(Box::new(SghSemigroup { inner })))
    })
}

/// Build a semigroup from an inline JSON table.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_semigroup_from_json(json: *const c_char, out: *mut *mut SghSemigroup) -> SghStatus {
    guard(|| {
        let v = parse_json(read_str(json)?)?;
        let table = io::resolve_semigroup(&v, Path::new("."))?;
        let inner = Arc::new(InverseStructure::new(table).map_err(CliError::from)?);
        write(out, Box::into_raw(Box::new(SghSemigroup { inner })))
    })
}

/// # Safety
/// `sg` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sgh_semigroup_free(sg: *mut SghSemigroup) {
    if !sg.is_null() {
        drop(Box::from_raw(sg));
    }
}

/// Number of elements, zero included.
///
/// # Safety
/// `sg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_semigroup_order(sg: *const SghSemigroup, out: *mut usize) -> SghStatus {
    guard(|| write(out, borrow(sg, "semigroup")?.inner.order()))
}

/// Dimensions of the induced irreducible representations.
///
/// Writes the count to `count` and, when `capacity` suffices, the dimensions
/// to `dims`. Pass `dims = NULL, capacity = 0` to query the count.
///
/// # Safety
/// `sg` must be a live handle, `count` valid, and `dims` valid for `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn sgh_semigroup_irrep_dims(
    sg: *const SghSemigroup,
    seed: u64,
    dims: *mut usize,
    capacity: usize,
    count: *mut usize,
) -> SghStatus {
    guard(|| {
        let set = induced_irreps(&borrow(sg, "semigroup")?.inner, seed)?;
        let d = set.dims();
        write(count, d.len())?;
        if dims.is_null() && capacity == 0 {
            return Ok(());
        }
        if capacity < d.len() {
            return Err(Failure(
                SghStatus::BufferTooSmall,
                format!("need {} entries, got {capacity}", d.len()),
            ));
        }
        if dims.is_null() {
            return Err(Failure(SghStatus::NullPointer, "null dims buffer".into()));
        }
        ptr::copy_nonoverlapping(d.as_ptr(), dims, d.len());
        Ok(())
    })
}

/// JSON structure report, the same document `sgharm analyze` puts under `result`.
///
/// # Safety
/// `reference` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_analyze_json(reference: *const c_char, seed: u64, out: *mut *mut c_char) -> SghStatus {
    guard(|| {
        let v = cli::analyze(read_str(reference)?, false, seed)?;
        write_json(out, &v)
    })
}

/// Parse a map document. Relative semigroup paths resolve against the working directory.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_map_from_json(json: *const c_char, out: *mut *mut SghMap) -> SghStatus {
    guard(|| {
        let v = parse_json(read_str(json)?)?;
        let inner = io::map_from_json(&v, Path::new("."))?;
        write(out, Box::into_raw(Box::new(SghMap { inner })))
    })
}

/// Load a map document from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_map_load(path: *const c_char, out: *mut *mut SghMap) -> SghStatus {
    guard(|| {
        let inner = io::load_map(Path::new(read_str(path)?))?;
        write(out, Box::into_raw(Box::new(SghMap { inner })))
    })
}

/// # Safety
/// `map` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sgh_map_free(map: *mut SghMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Fourier data of a map over all induced irreps, as JSON.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_map_fourier_json(map: *const SghMap, seed: u64, out: *mut *mut c_char) -> SghStatus {
    guard(|| {
        let f = &borrow(map, "map")?.inner;
        let set = induced_irreps(f.semigroup(), seed)?;
        let data = fourier_all(f, &set)?;
        write_json(out, &io::fourier_to_json(&data))
    })
}

/// Largest entrywise error of transforming and inverting a map.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_map_roundtrip_error(map: *const SghMap, seed: u64, out: *mut f64) -> SghStatus {
    guard(|| {
        let f = &borrow(map, "map")?.inner;
        let set = induced_irreps(f.semigroup(), seed)?;
        let back = fourier_invert_all(&fourier_all(f, &set)?, &set)?;
        write(out, in_basis(f, Basis::Groupoid).max_abs_diff(&back))
    })
}

/// Positive-definiteness verdicts under every characterization, with the
/// per-irrep transform checks, as JSON.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sgh_map_bochner_json(
    map: *const SghMap,
    seed: u64,
    tol: f64,
    out: *mut *mut c_char,
) -> SghStatus {
    guard(|| {
        let f = &borrow(map, "map")?.inner;
        let set = induced_irreps(f.semigroup(), seed)?;
        let report = bochner_check(f, &set, tol)?;
        let v = serde_json::to_value(&report).map_err(|e| Failure(SghStatus::Internal, e.to_string()))?;
        write_json(out, &v)
    })
}

/// Complete positivity of a map on a matrix-units semigroup via its Choi matrix.
///
/// # Safety
/// `map` must be a live handle; `is_cp` and `min_eigenvalue` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sgh_map_cp_check(
    map: *const SghMap,
    tol: f64,
    is_cp: *mut bool,
    min_eigenvalue: *mut f64,
) -> SghStatus {
    guard(|| {
        let check = cp_check(&borrow(map, "map")?.inner, tol)?;
        write(is_cp, check.psd)?;
        write(min_eigenvalue, check.min_eigenvalue)
    })
}
