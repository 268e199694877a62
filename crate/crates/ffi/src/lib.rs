//! C ABI for `sdf-core`.
//!
//! Codes are opaque handles owned by the caller and released with the
//! matching `*_free`. Every call returns an [`SdfStatus`]; on failure the
//! message is available from [`sdf_last_error`] on the same thread.
//! Strings returned through `char **` are freed with [`sdf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sdf_core::binary::{low_weight_census, min_distance_bz, BinaryCode, CensusOptions};
use sdf_core::code::{ExtensionParams, RingCode, Theorem};
use sdf_core::harness::embedded_library;
use sdf_core::ring::{parse_element, RingVector};
use sdf_core::spec::{build_from_text, CodeFile};
use sdf_core::Error;

/// Opaque ring code.
pub struct SdfCode(RingCode);

/// Opaque binary linear code.
pub struct SdfBinary(BinaryCode);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Spec, token, JSON or matrix text did not parse.
    Parse = 3,
    /// An extension or construction precondition does not hold.
    Precondition = 4,
    /// A referenced code is unknown.
    Unresolved = 5,
    /// Output buffer too small.
    BufferTooSmall = 6,
    /// The census could not certify its counts.
    Incomplete = 7,
    Internal = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let msg = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> SdfStatus {
    match e {
        Error::Token { .. } | Error::Spec { .. } | Error::Json(_) | Error::WrongRing { .. } => SdfStatus::Parse,
        Error::BadExtensionVector { .. }
        | Error::BadUnit(_)
        | Error::NotSelfDual
        | Error::NotSystematic
        | Error::NotFourCirculant
        | Error::LengthMismatch { .. }
        | Error::RingMismatch { .. }
        | Error::OddLength(_) => SdfStatus::Precondition,
        Error::Unresolved(_) => SdfStatus::Unresolved,
        Error::IncompleteCensus(_) => SdfStatus::Incomplete,
        _ => SdfStatus::Internal,
    }
}

struct Fail(SdfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SdfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SdfStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SdfStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SdfStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SdfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn reference<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(SdfStatus::NullArgument, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SdfStatus::NullArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SdfStatus::NullArgument, "output pointer is null".into()));
    }
    *out = value;
    Ok(())
}

/// Message for the last failed call on this thread ("" after a success).
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sdf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a code from spec text. `name` selects a section (null: the last
/// one); bases resolve in the text, then in the built-in library.
///
/// # Safety
/// `spec` and non-null `name` must be NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_from_spec(
    spec: *const c_char,
    name: *const c_char,
    out: *mut *mut SdfCode,
) -> SdfStatus {
    guard(|| {
        let spec = text(spec, "spec")?;
        let name = if name.is_null() {
            None
        } else {
            Some(text(name, "name")?)
        };
        let code = build_from_text(spec, name, Some(&embedded_library()))?;
        store(out, SdfCode(code))
    })
}

/// Builds a library code by name or expression, e.g. `"J1"` or `"psi_f4u(L6)"`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_from_library(expr: *const c_char, out: *mut *mut SdfCode) -> SdfStatus {
    guard(|| {
        let code = embedded_library().build(text(expr, "expr")?)?;
        store(out, SdfCode(code))
    })
}

/// Loads a code from its JSON file form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_from_json(json: *const c_char, out: *mut *mut SdfCode) -> SdfStatus {
    guard(|| {
        let code = CodeFile::from_json(text(json, "json")?)?.to_code()?;
        store(out, SdfCode(code))
    })
}

/// JSON file form of `code`; free with [`sdf_string_free`].
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_to_json(code: *const SdfCode, out: *mut *mut c_char) -> SdfStatus {
    guard(|| {
        let code = reference(code, "code")?;
        let json = CodeFile::from_code(&code.0).to_json();
        let s = CString::new(json).map_err(|e| Fail(SdfStatus::Internal, e.to_string()))?;
        write(out, s.into_raw())
    })
}

/// Length over the ring.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_length(code: *const SdfCode, out: *mut usize) -> SdfStatus {
    guard(|| write(out, reference(code, "code")?.0.length()))
}

/// Self-duality under the ring's Euclidean inner product.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_is_self_dual(code: *const SdfCode, out: *mut bool) -> SdfStatus {
    guard(|| write(out, reference(code, "code")?.0.is_self_dual()))
}

/// Two-coordinate extension. `theorem` is `'A'` (bordered) or `'B'`
/// (systematic); `x` and `c` use the ring's token alphabet.
///
/// # Safety
/// `code` must be a live handle, `x` and `c` NUL-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_extend(
    code: *const SdfCode,
    theorem: c_char,
    x: *const c_char,
    c: *const c_char,
    out: *mut *mut SdfCode,
) -> SdfStatus {
    guard(|| {
        let code = &reference(code, "code")?.0;
        let theorem = match theorem as u8 {
            b'A' | b'a' => Theorem::A,
            b'B' | b'b' => Theorem::B,
            t => {
                return Err(Fail(
                    SdfStatus::Parse,
                    format!("theorem {:?} is neither A nor B", t as char),
                ))
            }
        };
        let params = ExtensionParams {
            theorem,
            x: RingVector::parse(text(x, "x")?, code.ring())?,
            c: parse_element(text(c, "c")?, code.ring())?,
        };
        store(out, SdfCode(code.extend(&params)?))
    })
}

/// Binary image through the ring's Gray map.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_binary_image(code: *const SdfCode, out: *mut *mut SdfBinary) -> SdfStatus {
    guard(|| {
        let image = reference(code, "code")?.0.binary_image()?;
        store(out, SdfBinary(image))
    })
}

/// Binary code from '0'/'1' rows, one per line.
///
/// # Safety
/// `matrix` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_binary_from_matrix(matrix: *const c_char, out: *mut *mut SdfBinary) -> SdfStatus {
    guard(|| {
        let code = BinaryCode::parse_matrix(text(matrix, "matrix")?)?;
        store(out, SdfBinary(code))
    })
}

/// Length `n` and dimension `k`.
///
/// # Safety
/// `code` must be a live handle; `n` and `k` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_binary_parameters(code: *const SdfBinary, n: *mut usize, k: *mut usize) -> SdfStatus {
    guard(|| {
        let code = &reference(code, "code")?.0;
        write(n, code.n())?;
        write(k, code.k())
    })
}

/// Exact minimum distance.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdf_binary_min_distance(code: *const SdfBinary, out: *mut usize) -> SdfStatus {
    guard(|| write(out, min_distance_bz(&reference(code, "code")?.0)?))
}

/// Exact codeword counts for weights `0..=wmax` into `counts`, which must
/// hold `wmax + 1` entries (`len`).
///
/// # Safety
/// `code` must be a live handle and `counts` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn sdf_binary_census(
    code: *const SdfBinary,
    wmax: usize,
    counts: *mut u64,
    len: usize,
) -> SdfStatus {
    guard(|| {
        let code = &reference(code, "code")?.0;
        if counts.is_null() {
            return Err(Fail(SdfStatus::NullArgument, "counts is null".into()));
        }
        if len <= wmax {
            return Err(Fail(
                SdfStatus::BufferTooSmall,
                format!("need {} entries, have {len}", wmax + 1),
            ));
        }
        let census = low_weight_census(code, wmax, CensusOptions::default())?;
        if !census.complete {
            return Err(Error::IncompleteCensus(wmax).into());
        }
        let out = std::slice::from_raw_parts_mut(counts, len);
        out.fill(0);
        out[..census.counts.len()].copy_from_slice(&census.counts);
        Ok(())
    })
}

/// # Safety
/// `code` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sdf_code_free(code: *mut SdfCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sdf_binary_free(code: *mut SdfBinary) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sdf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
