//! C ABI for `ripstream`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every fallible call returns a [`RipsStatus`];
//! on failure a message is available from [`rips_last_error`] on the same
//! thread. Streams and coboundaries keep their space alive, so a space may
//! be freed while they are still in use.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use ripstream::coboundary::{apparent_cofacet, Coboundary};
use ripstream::stream::{edge_stream, vertex_stream, SimplexStream};
use ripstream::{DistanceMatrix, Error, NeighborhoodLists, PointCloud, Simplex};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RipsStatus {
    Ok = 0,
    /// The iterator is exhausted; no output was written.
    Done = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    /// Malformed input data such as a negative or non-finite distance.
    DataError = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

struct Space {
    m: DistanceMatrix,
    nl: NeighborhoodLists,
}

/// A finite metric space with its sorted neighborhood lists.
pub struct RipsSpace {
    inner: Arc<Space>,
}

/// Simplices of one dimension in non-decreasing diameter order.
pub struct RipsStream {
    // declared first so it is dropped before the space it borrows from
    iter: Box<dyn Iterator<Item = Simplex>>,
    pending: Option<Simplex>,
    _space: Arc<Space>,
}

/// Cofacets of one simplex in non-decreasing diameter order.
pub struct RipsCoboundary {
    iter: Coboundary<'static>,
    _space: Arc<Space>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: RipsStatus, msg: impl Into<String>) -> RipsStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> RipsStatus {
    let status = if e.is_data_error() {
        RipsStatus::DataError
    } else {
        RipsStatus::InvalidArgument
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> RipsStatus) -> RipsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RipsStatus::Panic, "internal panic"))
}

/// Extends a borrow of `space` to `'static`.
///
/// # Safety
/// The result must not outlive every `Arc` pointing at `space`; handles
/// keep a clone next to the borrowing iterator for that purpose.
unsafe fn extend(space: &Arc<Space>) -> &'static Space {
    &*Arc::as_ptr(space)
}

unsafe fn slice<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if data.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(data, len))
    }
}

fn new_space(m: DistanceMatrix, out: *mut *mut RipsSpace) -> RipsStatus {
    let nl = NeighborhoodLists::new(&m);
    let space = Box::new(RipsSpace {
        inner: Arc::new(Space { m, nl }),
    });
    // SAFETY: callers check `out` for null first.
    unsafe { *out = Box::into_raw(space) };
    RipsStatus::Ok
}

fn simplex_from(space: &Space, vertices: &[usize]) -> Result<Simplex, RipsStatus> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    Simplex::new(vs, &space.m).map_err(from_error)
}

/// Builds a space from `n` points of dimension `dim`, stored row-major in
/// `coords` (`n * dim` values), under the Euclidean metric.
///
/// # Safety
/// `coords` must point to `n * dim` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rips_space_from_points(
    coords: *const f64,
    n: usize,
    dim: usize,
    out: *mut *mut RipsSpace,
) -> RipsStatus {
    guard(|| {
        if out.is_null() {
            return fail(RipsStatus::NullPointer, "out is null");
        }
        let Some(len) = n.checked_mul(dim) else {
            return fail(RipsStatus::InvalidArgument, "n * dim overflows");
        };
        let Some(values) = slice(coords, len) else {
            return fail(RipsStatus::NullPointer, "coords is null");
        };
        let rows = if dim == 0 {
            vec![Vec::new(); n]
        } else {
            values.chunks(dim).map(<[f64]>::to_vec).collect()
        };
        match PointCloud::new(rows) {
            Ok(cloud) => new_space(DistanceMatrix::from_points(&cloud), out),
            Err(e) => from_error(e),
        }
    })
}

/// Builds a space from the strict lower triangle of a distance matrix in
/// row order: `d(1,0), d(2,0), d(2,1), d(3,0), ...`. `len` must be a
/// triangular number.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rips_space_from_lower_matrix(
    values: *const f64,
    len: usize,
    out: *mut *mut RipsSpace,
) -> RipsStatus {
    guard(|| {
        if out.is_null() {
            return fail(RipsStatus::NullPointer, "out is null");
        }
        let Some(values) = slice(values, len) else {
            return fail(RipsStatus::NullPointer, "values is null");
        };
        match DistanceMatrix::from_lower_triangle(values) {
            Ok(m) => new_space(m, out),
            Err(e) => from_error(e),
        }
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rips_space_len(space: *const RipsSpace) -> usize {
    space.as_ref().map_or(0, |s| s.inner.m.len())
}

/// Distance between two points, or NaN if either index is out of range.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rips_space_distance(space: *const RipsSpace, i: usize, j: usize) -> f64 {
    match space.as_ref() {
        Some(s) if i < s.inner.m.len() && j < s.inner.m.len() => s.inner.m.get(i, j),
        _ => f64::NAN,
    }
}

/// Smallest radius at which the complex becomes a cone, or NaN for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rips_space_enclosing_radius(space: *const RipsSpace) -> f64 {
    space
        .as_ref()
        .map_or(f64::NAN, |s| s.inner.m.enclosing_radius())
}

/// # Safety
/// `space` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn rips_space_free(space: *mut RipsSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Starts a stream of the `dim`-simplices with diameter `<= threshold`.
/// With `skip_apparent`, simplices that are the cofacet of an apparent
/// pair are left out (dimension 2 and up).
///
/// # Safety
/// `space` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rips_stream_new(
    space: *const RipsSpace,
    dim: usize,
    threshold: f64,
    skip_apparent: bool,
    out: *mut *mut RipsStream,
) -> RipsStatus {
    guard(|| {
        let (Some(space), false) = (space.as_ref(), out.is_null()) else {
            return fail(RipsStatus::NullPointer, "space or out is null");
        };
        if threshold.is_nan() {
            return fail(RipsStatus::InvalidArgument, "threshold is NaN");
        }
        let arc = Arc::clone(&space.inner);
        let s = extend(&arc);
        let iter: Box<dyn Iterator<Item = Simplex>> = match dim {
            0 => Box::new(vertex_stream(&s.m)),
            1 => Box::new(edge_stream(&s.m, threshold).into_iter()),
            _ => Box::new(SimplexStream::new(
                &s.m,
                &s.nl,
                dim,
                threshold,
                skip_apparent,
            )),
        };
        *out = Box::into_raw(Box::new(RipsStream {
            iter,
            pending: None,
            _space: arc,
        }));
        RipsStatus::Ok
    })
}

/// Writes the next simplex: its vertices in decreasing order into
/// `vertices` (room for `capacity`), the vertex count into `count` and the
/// diameter into `diameter`. Returns `Done` at the end of the stream.
/// `BufferTooSmall` consumes nothing; `count` then holds the size needed.
///
/// # Safety
/// `stream` must be a live handle; `vertices` must have room for
/// `capacity` values; `count` and `diameter` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rips_stream_next(
    stream: *mut RipsStream,
    vertices: *mut usize,
    capacity: usize,
    count: *mut usize,
    diameter: *mut f64,
) -> RipsStatus {
    guard(|| {
        let Some(stream) = stream.as_mut() else {
            return fail(RipsStatus::NullPointer, "stream is null");
        };
        if count.is_null() || diameter.is_null() || (vertices.is_null() && capacity > 0) {
            return fail(RipsStatus::NullPointer, "output pointer is null");
        }
        let Some(s) = stream.pending.take().or_else(|| stream.iter.next()) else {
            return RipsStatus::Done;
        };
        let needed = s.vertices().len();
        *count = needed;
        if needed > capacity {
            stream.pending = Some(s);
            return fail(
                RipsStatus::BufferTooSmall,
                format!("need room for {needed} vertices"),
            );
        }
        ptr::copy_nonoverlapping(s.vertices().as_ptr(), vertices, needed);
        *diameter = s.diameter();
        RipsStatus::Ok
    })
}

/// # Safety
/// `stream` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn rips_stream_free(stream: *mut RipsStream) {
    if !stream.is_null() {
        drop(Box::from_raw(stream));
    }
}

/// Starts the coboundary of the simplex on `vertices` (any order, at least
/// two). Cofacets with diameter above `threshold` are left out; pass
/// infinity for no bound.
///
/// # Safety
/// `space` must be a live handle; `vertices` must point to `count` values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rips_coboundary_new(
    space: *const RipsSpace,
    vertices: *const usize,
    count: usize,
    threshold: f64,
    out: *mut *mut RipsCoboundary,
) -> RipsStatus {
    guard(|| {
        let (Some(space), false) = (space.as_ref(), out.is_null()) else {
            return fail(RipsStatus::NullPointer, "space or out is null");
        };
        let Some(vertices) = slice(vertices, count) else {
            return fail(RipsStatus::NullPointer, "vertices is null");
        };
        if threshold.is_nan() {
            return fail(RipsStatus::InvalidArgument, "threshold is NaN");
        }
        let arc = Arc::clone(&space.inner);
        let s = extend(&arc);
        let sigma = match simplex_from(s, vertices) {
            Ok(sigma) => sigma,
            Err(status) => return status,
        };
        let bound = (threshold != f64::INFINITY).then_some(threshold);
        match Coboundary::new(sigma, &s.nl, &s.m, bound) {
            Ok(iter) => {
                *out = Box::into_raw(Box::new(RipsCoboundary { iter, _space: arc }));
                RipsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Writes the next added vertex and the cofacet's diameter, or returns `Done`.
///
/// # Safety
/// `cob` must be a live handle; `vertex` and `diameter` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rips_coboundary_next(
    cob: *mut RipsCoboundary,
    vertex: *mut usize,
    diameter: *mut f64,
) -> RipsStatus {
    guard(|| {
        let Some(cob) = cob.as_mut() else {
            return fail(RipsStatus::NullPointer, "coboundary is null");
        };
        if vertex.is_null() || diameter.is_null() {
            return fail(RipsStatus::NullPointer, "output pointer is null");
        }
        match cob.iter.next() {
            Some((w, d)) => {
                *vertex = w;
                *diameter = d;
                RipsStatus::Ok
            }
            None => RipsStatus::Done,
        }
    })
}

/// # Safety
/// `cob` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn rips_coboundary_free(cob: *mut RipsCoboundary) {
    if !cob.is_null() {
        drop(Box::from_raw(cob));
    }
}

/// Looks up the apparent pair of the simplex on `vertices`. On `Ok`,
/// `found` tells whether it has one and `vertex` is the vertex that
/// completes the cofacet.
///
/// # Safety
/// `space` must be a live handle; `vertices` must point to `count` values;
/// `vertex` and `found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rips_apparent_cofacet(
    space: *const RipsSpace,
    vertices: *const usize,
    count: usize,
    vertex: *mut usize,
    found: *mut bool,
) -> RipsStatus {
    guard(|| {
        let Some(space) = space.as_ref() else {
            return fail(RipsStatus::NullPointer, "space is null");
        };
        let Some(vertices) = slice(vertices, count) else {
            return fail(RipsStatus::NullPointer, "vertices is null");
        };
        if vertex.is_null() || found.is_null() {
            return fail(RipsStatus::NullPointer, "output pointer is null");
        }
        let s = &space.inner;
        let sigma = match simplex_from(s, vertices) {
            Ok(sigma) => sigma,
            Err(status) => return status,
        };
        match apparent_cofacet(&sigma, &s.nl, &s.m) {
            Ok(Some(tau)) => {
                *found = true;
                *vertex = *tau
                    .vertices()
                    .iter()
                    .find(|&&v| !sigma.contains(v))
                    .expect("tau has one more vertex");
                RipsStatus::Ok
            }
            Ok(None) => {
                *found = false;
                RipsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Copies the last error message of this thread into `buf` (NUL
/// terminated, truncated to `capacity`) and returns its full length
/// without the terminator; 0 if there is none.
///
/// # Safety
/// `buf` must be null or have room for `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn rips_last_error(buf: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}
