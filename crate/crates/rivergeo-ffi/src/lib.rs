//! C ABI for the river-metric geometry toolkit.
//!
//! Every function returns an [`RgStatus`] code and writes its results
//! through out pointers. Set descriptions enter either as JSON strings or
//! as opaque [`RgSet`] handles created here; handles are released with
//! [`rg_set_free`] and strings produced by this library with
//! [`rg_string_free`]. All functions are panic-safe: internal panics are
//! caught and reported as `RG_STATUS_INTERNAL`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rivergeo::error::Error;
use rivergeo::metric::{distance, Point};
use rivergeo::noncompact::{mnc, modulus_estimate, y_star, Measure};
use rivergeo::segment::{metric_segment, midpoint};
use rivergeo::sets::{convex_hull, distance_to_set, is_convex, SetDescription};
use rivergeo::wstructure::{takahashi_residual, w_point};

/// Result code of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RgStatus {
    /// The call succeeded and all out parameters are set.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was structurally invalid (non-finite number, empty
    /// interval, malformed set description).
    InvalidInput = 2,
    /// Arguments were well formed but violated an operation's precondition
    /// (weight outside [0, 1], epsilon out of range, and so on).
    Precondition = 3,
    /// A string argument was not valid UTF-8.
    Utf8 = 4,
    /// A string argument was not valid JSON for the expected shape.
    Json = 5,
    /// An unexpected internal failure; the out parameters are unspecified.
    Internal = 6,
}

/// Noncompactness measure selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RgMeasure {
    /// Set measure: twice the escape height.
    Alpha = 0,
    /// Ball-covering measure: the escape height.
    Chi = 1,
    /// Separation measure: the escape height.
    Beta = 2,
}

impl From<RgMeasure> for Measure {
    fn from(measure: RgMeasure) -> Measure {
        match measure {
            RgMeasure::Alpha => Measure::Alpha,
            RgMeasure::Chi => Measure::Chi,
            RgMeasure::Beta => Measure::Beta,
        }
    }
}

/// Opaque handle to a parsed, validated set description.
pub struct RgSet(SetDescription);

fn status_of(err: &Error) -> RgStatus {
    match err {
        Error::NonFinitePoint
        | Error::InvalidInterval
        | Error::InvalidRadius
        | Error::MalformedUnion
        | Error::EmptyPointList
        | Error::InvalidViewport
        | Error::MalformedWitness => RgStatus::InvalidInput,
        _ => RgStatus::Precondition,
    }
}

fn guarded<F: FnOnce() -> RgStatus>(body: F) -> RgStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(RgStatus::Internal)
}

macro_rules! nonnull {
    ($($ptr:expr),+) => {
        $(if $ptr.is_null() {
            return RgStatus::NullPointer;
        })+
    };
}

fn point(x: f64, y: f64) -> Result<Point, RgStatus> {
    Point::new(x, y).map_err(|e| status_of(&e))
}

fn into_c_string(text: String, out: *mut *mut c_char) -> RgStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RgStatus::Ok
        }
        Err(_) => RgStatus::Internal,
    }
}

/// Version of the underlying library as a static NUL-terminated string.
/// The pointer is valid for the life of the process; do not free it.
#[no_mangle]
pub extern "C" fn rg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Distance between `(x1, y1)` and `(x2, y2)`.
///
/// # Safety
/// `out_distance` must point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn rg_distance(
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    out_distance: *mut f64,
) -> RgStatus {
    guarded(|| {
        nonnull!(out_distance);
        let (p, q) = match (point(x1, y1), point(x2, y2)) {
            (Ok(p), Ok(q)) => (p, q),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        unsafe { *out_distance = distance(p, q) };
        RgStatus::Ok
    })
}

/// Point halfway along the shortest path between two points.
///
/// # Safety
/// `out_x` and `out_y` must point to writable `double`s.
#[no_mangle]
pub unsafe extern "C" fn rg_midpoint(
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> RgStatus {
    guarded(|| {
        nonnull!(out_x, out_y);
        let (p, q) = match (point(x1, y1), point(x2, y2)) {
            (Ok(p), Ok(q)) => (p, q),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let m = midpoint(p, q);
        unsafe {
            *out_x = m.x();
            *out_y = m.y();
        }
        RgStatus::Ok
    })
}

/// Convex-combination point for a weight `lambda` in [0, 1]: at 1 it is the
/// first point, at 0 the second.
///
/// # Safety
/// `out_x` and `out_y` must point to writable `double`s.
#[no_mangle]
pub unsafe extern "C" fn rg_w_point(
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    lambda: f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> RgStatus {
    guarded(|| {
        nonnull!(out_x, out_y);
        let (p, q) = match (point(x1, y1), point(x2, y2)) {
            (Ok(p), Ok(q)) => (p, q),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match w_point(p, q, lambda) {
            Ok(w) => {
                unsafe {
                    *out_x = w.x();
                    *out_y = w.y();
                }
                RgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Convexity residual of the combination structure: the weighted distance
/// sum from `(ux, uy)` minus the distance to the combination point. It is
/// nonnegative for every admissible input.
///
/// # Safety
/// `out_residual` must point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn rg_takahashi_residual(
    ux: f64,
    uy: f64,
    v1x: f64,
    v1y: f64,
    v2x: f64,
    v2y: f64,
    lambda: f64,
    out_residual: *mut f64,
) -> RgStatus {
    guarded(|| {
        nonnull!(out_residual);
        let (u, v1, v2) = match (point(ux, uy), point(v1x, v1y), point(v2x, v2y)) {
            (Ok(u), Ok(v1), Ok(v2)) => (u, v1, v2),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
        match takahashi_residual(u, v1, v2, lambda) {
            Ok(r) => {
                unsafe { *out_residual = r };
                RgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Shortest-path decomposition between two points.
///
/// Writes up to three pieces as quadruples `x1 y1 x2 y2` into `out_pieces`
/// and the piece count into `out_piece_count`.
///
/// # Safety
/// `out_pieces` must point to a writable array of at least 12 `double`s and
/// `out_piece_count` to a writable `uintptr_t`.
#[no_mangle]
pub unsafe extern "C" fn rg_segment_pieces(
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    out_pieces: *mut f64,
    out_piece_count: *mut usize,
) -> RgStatus {
    guarded(|| {
        nonnull!(out_pieces, out_piece_count);
        let (p, q) = match (point(x1, y1), point(x2, y2)) {
            (Ok(p), Ok(q)) => (p, q),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let seg = metric_segment(p, q);
        for (i, piece) in seg.pieces.iter().enumerate() {
            unsafe {
                *out_pieces.add(4 * i) = piece.start.x();
                *out_pieces.add(4 * i + 1) = piece.start.y();
                *out_pieces.add(4 * i + 2) = piece.end.x();
                *out_pieces.add(4 * i + 3) = piece.end.y();
            }
        }
        unsafe { *out_piece_count = seg.pieces.len() };
        RgStatus::Ok
    })
}

/// Parses and validates a JSON set description into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_set` a writable pointer
/// slot. On success the caller owns the handle and must release it with
/// [`rg_set_free`].
#[no_mangle]
pub unsafe extern "C" fn rg_set_from_json(
    json: *const c_char,
    out_set: *mut *mut RgSet,
) -> RgStatus {
    guarded(|| {
        nonnull!(json, out_set);
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => return RgStatus::Utf8,
        };
        let set: SetDescription = match serde_json::from_str(text) {
            Ok(s) => s,
            Err(_) => return RgStatus::Json,
        };
        if let Err(e) = set.validate() {
            return status_of(&e);
        }
        unsafe { *out_set = Box::into_raw(Box::new(RgSet(set))) };
        RgStatus::Ok
    })
}

/// Serializes a set handle back to JSON.
///
/// # Safety
/// `set` must be a live handle from this library and `out_json` a writable
/// pointer slot. The returned string must be released with
/// [`rg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rg_set_to_json(
    set: *const RgSet,
    out_json: *mut *mut c_char,
) -> RgStatus {
    guarded(|| {
        nonnull!(set, out_json);
        let set = unsafe { &(*set).0 };
        match serde_json::to_string(set) {
            Ok(text) => into_c_string(text, out_json),
            Err(_) => RgStatus::Internal,
        }
    })
}

/// Releases a set handle. Null is ignored.
///
/// # Safety
/// `set` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rg_set_free(set: *mut RgSet) {
    if !set.is_null() {
        drop(unsafe { Box::from_raw(set) });
    }
}

/// Releases a string produced by this library. Null is ignored.
///
/// # Safety
/// `text` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Whether the set contains `(x, y)` within slack `tol`.
///
/// # Safety
/// `set` must be a live handle and `out_contains` a writable `bool`.
#[no_mangle]
pub unsafe extern "C" fn rg_set_contains(
    set: *const RgSet,
    x: f64,
    y: f64,
    tol: f64,
    out_contains: *mut bool,
) -> RgStatus {
    guarded(|| {
        nonnull!(set, out_contains);
        let p = match point(x, y) {
            Ok(p) => p,
            Err(s) => return s,
        };
        unsafe { *out_contains = (*set).0.contains(p, tol) };
        RgStatus::Ok
    })
}

/// Distance from `(x, y)` to the set.
///
/// # Safety
/// `set` must be a live handle and `out_distance` a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn rg_set_distance(
    set: *const RgSet,
    x: f64,
    y: f64,
    out_distance: *mut f64,
) -> RgStatus {
    guarded(|| {
        nonnull!(set, out_distance);
        let p = match point(x, y) {
            Ok(p) => p,
            Err(s) => return s,
        };
        unsafe { *out_distance = distance_to_set(p, &(*set).0) };
        RgStatus::Ok
    })
}

/// Exact convexity decision for the set.
///
/// # Safety
/// `set` must be a live handle and `out_convex` a writable `bool`.
#[no_mangle]
pub unsafe extern "C" fn rg_set_is_convex(
    set: *const RgSet,
    out_convex: *mut bool,
) -> RgStatus {
    guarded(|| {
        nonnull!(set, out_convex);
        match is_convex(unsafe { &(*set).0 }) {
            Ok(verdict) => {
                unsafe { *out_convex = verdict.convex };
                RgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Full convexity verdict as JSON, including any counterexample segment.
///
/// # Safety
/// `set` must be a live handle and `out_json` a writable pointer slot. The
/// returned string must be released with [`rg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rg_set_convexity_json(
    set: *const RgSet,
    out_json: *mut *mut c_char,
) -> RgStatus {
    guarded(|| {
        nonnull!(set, out_json);
        match is_convex(unsafe { &(*set).0 }) {
            Ok(verdict) => match serde_json::to_string(&verdict) {
                Ok(text) => into_c_string(text, out_json),
                Err(_) => RgStatus::Internal,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Escape height of the set: how far its points can stand off the axis
/// arbitrarily far along it. Zero exactly for relatively compact sets.
///
/// # Safety
/// `set` must be a live handle and `out_height` a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn rg_set_escape_height(
    set: *const RgSet,
    out_height: *mut f64,
) -> RgStatus {
    guarded(|| {
        nonnull!(set, out_height);
        unsafe { *out_height = y_star(&(*set).0) };
        RgStatus::Ok
    })
}

/// Noncompactness measures of the set as a JSON report.
///
/// # Safety
/// `set` must be a live handle and `out_json` a writable pointer slot. The
/// returned string must be released with [`rg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rg_set_mnc_json(
    set: *const RgSet,
    out_json: *mut *mut c_char,
) -> RgStatus {
    guarded(|| {
        nonnull!(set, out_json);
        let report = mnc(unsafe { &(*set).0 });
        match serde_json::to_string(&report) {
            Ok(text) => into_c_string(text, out_json),
            Err(_) => RgStatus::Internal,
        }
    })
}

/// Convex hull of `point_count` points given as interleaved `x, y` pairs.
///
/// # Safety
/// `coords` must point to `2 * point_count` readable `double`s and
/// `out_set` to a writable pointer slot. On success the caller owns the
/// handle and must release it with [`rg_set_free`].
#[no_mangle]
pub unsafe extern "C" fn rg_convex_hull(
    coords: *const f64,
    point_count: usize,
    out_set: *mut *mut RgSet,
) -> RgStatus {
    guarded(|| {
        nonnull!(coords, out_set);
        let mut points = Vec::with_capacity(point_count);
        for i in 0..point_count {
            let (x, y) = unsafe { (*coords.add(2 * i), *coords.add(2 * i + 1)) };
            match point(x, y) {
                Ok(p) => points.push(p),
                Err(s) => return s,
            }
        }
        match convex_hull(&points) {
            Ok(hull) => {
                unsafe { *out_set = Box::into_raw(Box::new(RgSet(hull))) };
                RgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Modulus-of-noncompactness estimate for a measure at `epsilon`, scanning
/// at the given grid resolution (at least 2; around 200 for tight bounds).
///
/// # Safety
/// `out_value` must point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn rg_modulus_estimate(
    measure: RgMeasure,
    epsilon: f64,
    resolution: u32,
    out_value: *mut f64,
) -> RgStatus {
    guarded(|| {
        nonnull!(out_value);
        match modulus_estimate(measure.into(), epsilon, resolution as usize) {
            Ok(estimate) => {
                unsafe { *out_value = estimate.value };
                RgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
