//! C ABI for the `siatec` library.
//!
//! Datasets and encodings cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`SiatecStatus`]; on failure a description is available from
//! [`siatec_last_error_message`] on the same thread until the next failing
//! call. Panics are caught and reported as [`SiatecStatus::Panic`].
//!
//! The C header `include/siatec.h` is generated from this file at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use siatec::codec::{parse_dataset, Dataset, EncodingDocument};
use siatec::harness::{self, RunConfig, Variant};
use siatec::{CoverAlgorithm, Error, Point, PointSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiatecStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range or not valid UTF-8.
    InvalidArgument = 2,
    /// Points of different dimensions were combined.
    DimensionMismatch = 3,
    /// Dataset text or an encoding document could not be parsed.
    Parse = 4,
    /// An encoding failed to decode to its input.
    Lossy = 5,
    /// The library panicked; the handle arguments should be considered unusable.
    Panic = 6,
}

/// TEC cover algorithm used by [`siatec_encode`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiatecAlgorithm {
    Cosiatec = 0,
    SiatecCompress = 1,
}

/// A dataset together with its per-dimension decimal scale.
pub struct SiatecPointSet(Dataset);

/// An encoding together with the scale of the dataset it encodes.
pub struct SiatecEncoding(EncodingDocument);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SiatecStatus, String);

fn status_of(e: &Error) -> SiatecStatus {
    match e {
        Error::DimensionMismatch { .. } => SiatecStatus::DimensionMismatch,
        Error::Lossy(_) => SiatecStatus::Lossy,
        Error::Piece { source, .. } => status_of(source),
        Error::ZeroDimension | Error::EmptyDataset => SiatecStatus::InvalidArgument,
        _ => SiatecStatus::Parse,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SiatecStatus::NullPointer, format!("{what} is null"))
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure(SiatecStatus::InvalidArgument, message.into())
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SiatecStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SiatecStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {message}"));
            SiatecStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(handle: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller guarantees a non-null handle is live and unaliased by writers.
    unsafe { handle.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn out_slot<'a, T>(out: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: the caller guarantees a non-null `out` points to writable storage.
    unsafe { out.as_mut() }.ok_or_else(|| null(what))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: the caller guarantees `s` is a NUL-terminated string.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message describing the last failure on this thread, or null if none.
///
/// The string is owned by the library and stays valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn siatec_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a point set from `n_points * dim` row-major integer coordinates.
/// Duplicate points are merged.
///
/// # Safety
/// `coords` must point to `n_points * dim` readable values (it may be null
/// when `n_points` is zero) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siatec_point_set_from_coords(
    coords: *const i64,
    n_points: usize,
    dim: usize,
    out: *mut *mut SiatecPointSet,
) -> SiatecStatus {
    guard(|| {
        let out = unsafe { out_slot(out, "out") }?;
        if dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        let len = n_points
            .checked_mul(dim)
            .ok_or_else(|| invalid("coordinate count overflows"))?;
        let values: &[i64] = if len == 0 {
            &[]
        } else if coords.is_null() {
            return Err(null("coords"));
        } else {
            // SAFETY: the caller guarantees `len` readable values.
            unsafe { std::slice::from_raw_parts(coords, len) }
        };
        let points = values
            .chunks_exact(dim)
            .map(|c| Point::new(c.to_vec()))
            .collect();
        let set = PointSet::new(dim, points)?;
        *out = boxed(SiatecPointSet(Dataset::unscaled(set)));
        Ok(())
    })
}

/// Parses dataset text (one point per line, values separated by whitespace
/// or commas, `#` comment lines, decimals allowed).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siatec_point_set_parse(
    text: *const c_char,
    out: *mut *mut SiatecPointSet,
) -> SiatecStatus {
    guard(|| {
        let out = unsafe { out_slot(out, "out") }?;
        let data = parse_dataset(unsafe { self::text(text, "text") }?)?;
        *out = boxed(SiatecPointSet(data));
        Ok(())
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siatec_point_set_len(set: *const SiatecPointSet) -> usize {
    // SAFETY: forwarded caller guarantee.
    unsafe { set.as_ref() }.map_or(0, |s| s.0.points.len())
}

/// Number of coordinates per point, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siatec_point_set_dim(set: *const SiatecPointSet) -> usize {
    // SAFETY: forwarded caller guarantee.
    unsafe { set.as_ref() }.map_or(0, |s| s.0.points.dim())
}

/// Copies the points, in ascending lexicographic order, as row-major
/// coordinates into `buf`, which must hold at least `len * dim` values.
/// Coordinates are the scaled integers; see [`siatec_point_set_scale`].
///
/// # Safety
/// `set` must be a live handle and `buf` must point to `buf_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn siatec_point_set_copy_coords(
    set: *const SiatecPointSet,
    buf: *mut i64,
    buf_len: usize,
) -> SiatecStatus {
    guard(|| {
        let set = unsafe { deref(set, "set") }?;
        let needed = set.0.points.len() * set.0.points.dim();
        if buf_len < needed {
            return Err(invalid(format!(
                "buffer holds {buf_len} values, {needed} needed"
            )));
        }
        if needed == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        // SAFETY: the caller guarantees `buf_len >= needed` writable values.
        let dst = unsafe { std::slice::from_raw_parts_mut(buf, needed) };
        let src = set.0.points.iter().flat_map(|p| p.coords().iter().copied());
        for (d, s) in dst.iter_mut().zip(src) {
            *d = s;
        }
        Ok(())
    })
}

/// Copies the per-dimension decimal divisors into `buf`, which must hold at
/// least `dim` values. Coordinate `i` of a point is its value times `scale[i]`.
///
/// # Safety
/// `set` must be a live handle and `buf` must point to `buf_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn siatec_point_set_scale(
    set: *const SiatecPointSet,
    buf: *mut u64,
    buf_len: usize,
) -> SiatecStatus {
    guard(|| {
        let set = unsafe { deref(set, "set") }?;
        let scale = &set.0.scale;
        if buf_len < scale.len() {
            return Err(invalid(format!(
                "buffer holds {buf_len} values, {} needed",
                scale.len()
            )));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        // SAFETY: the caller guarantees `buf_len >= scale.len()` writable values.
        unsafe { std::slice::from_raw_parts_mut(buf, scale.len()) }.copy_from_slice(scale);
        Ok(())
    })
}

/// Releases a point set. Null is ignored.
///
/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn siatec_point_set_free(set: *mut SiatecPointSet) {
    if !set.is_null() {
        // SAFETY: the handle came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(set) });
    }
}

/// Encodes a non-empty point set with the cover algorithm `algorithm` (a
/// [`SiatecAlgorithm`] value), checking that the result decodes to the input.
///
/// # Safety
/// `set` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siatec_encode(
    set: *const SiatecPointSet,
    algorithm: u32,
    recursia: bool,
    rrt: bool,
    only_if_smaller: bool,
    out: *mut *mut SiatecEncoding,
) -> SiatecStatus {
    guard(|| {
        let set = unsafe { deref(set, "set") }?;
        let out = unsafe { out_slot(out, "out") }?;
        let cfg = RunConfig {
            algorithm: match algorithm {
                a if a == SiatecAlgorithm::Cosiatec as u32 => CoverAlgorithm::Cosiatec,
                a if a == SiatecAlgorithm::SiatecCompress as u32 => CoverAlgorithm::SiatecCompress,
                a => return Err(invalid(format!("unknown algorithm {a}"))),
            },
            variant: Variant { recursia, rrt },
            only_if_smaller,
        };
        let (encoding, _) = harness::run_pipeline(&cfg, "input", &set.0.points)?;
        *out = boxed(SiatecEncoding(EncodingDocument::new(
            encoding,
            set.0.scale.clone(),
        )));
        Ok(())
    })
}

/// Parses an encoding document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siatec_encoding_parse(
    json: *const c_char,
    out: *mut *mut SiatecEncoding,
) -> SiatecStatus {
    guard(|| {
        let out = unsafe { out_slot(out, "out") }?;
        let doc = EncodingDocument::from_json(unsafe { text(json, "json") }?)?;
        *out = boxed(SiatecEncoding(doc));
        Ok(())
    })
}

/// Serializes an encoding to its canonical document text. Release the
/// string with [`siatec_string_free`].
///
/// # Safety
/// `encoding` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siatec_encoding_to_json(
    encoding: *const SiatecEncoding,
    out: *mut *mut c_char,
) -> SiatecStatus {
    guard(|| {
        let encoding = unsafe { deref(encoding, "encoding") }?;
        let out = unsafe { out_slot(out, "out") }?;
        let json = CString::new(encoding.0.to_json()).expect("JSON has no NUL bytes");
        *out = json.into_raw();
        Ok(())
    })
}

/// Decodes an encoding into a new point set.
///
/// # Safety
/// `encoding` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn siatec_encoding_decode(
    encoding: *const SiatecEncoding,
    out: *mut *mut SiatecPointSet,
) -> SiatecStatus {
    guard(|| {
        let encoding = unsafe { deref(encoding, "encoding") }?;
        let out = unsafe { out_slot(out, "out") }?;
        *out = boxed(SiatecPointSet(encoding.0.decode()));
        Ok(())
    })
}

/// Encoding size (pattern points plus nonzero translators, counted through
/// nested patterns), or 0 for a null handle.
///
/// # Safety
/// `encoding` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siatec_encoding_size(encoding: *const SiatecEncoding) -> usize {
    // SAFETY: forwarded caller guarantee.
    unsafe { encoding.as_ref() }.map_or(0, |e| e.0.encoding.size())
}

/// Number of top-level TECs, or 0 for a null handle.
///
/// # Safety
/// `encoding` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn siatec_encoding_tec_count(encoding: *const SiatecEncoding) -> usize {
    // SAFETY: forwarded caller guarantee.
    unsafe { encoding.as_ref() }.map_or(0, |e| e.0.encoding.len())
}

/// Releases an encoding. Null is ignored.
///
/// # Safety
/// `encoding` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn siatec_encoding_free(encoding: *mut SiatecEncoding) {
    if !encoding.is_null() {
        // SAFETY: the handle came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(encoding) });
    }
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn siatec_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from `CString::into_raw` and is freed once.
        drop(unsafe { CString::from_raw(s) });
    }
}
