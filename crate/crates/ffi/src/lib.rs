//! C interface to `cimset`.
//!
//! Graphs cross the boundary as opaque `CimsetGraph` handles. Every function
//! returns a `CimsetStatus`; results go through out-pointers. On failure the
//! message is kept per thread and read with `cimset_last_error_message`.
//! Strings returned by the library are released with `cimset_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cimset::graph::{parse_graph, DirectedGraph, NodeSet};
use cimset::imset::{char_imset, subsets_by_size, ImsetJson};
use cimset::lattice::fiber_enumerate;
use cimset::numeric::{covariance_equiv_numeric, EquivOptions, OrthSolverConfig};
use cimset::Error;

/// Result code of every call. `CIMSET_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CimsetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    BufferTooSmall = 5,
    LimitExceeded = 6,
    Numeric = 7,
    Internal = 8,
}

/// Opaque directed graph.
pub struct CimsetGraph {
    inner: DirectedGraph,
}

/// Evidence from the numeric covariance-equivalence check.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CimsetNumericResult {
    /// True when every residual fell below the tolerance.
    pub equivalent: bool,
    pub max_residual: f64,
    pub min_residual: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CimsetStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) | Error::SelfLoop(_) => CimsetStatus::Parse,
        Error::SearchSpaceExceeded { .. } => CimsetStatus::LimitExceeded,
        Error::RankDeficient | Error::SingularSem | Error::DegeneratePivot { .. } => CimsetStatus::Numeric,
        Error::Io(_) => CimsetStatus::Internal,
        _ => CimsetStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (CimsetStatus, String)>) -> CimsetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CimsetStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CimsetStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (CimsetStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (CimsetStatus, String) {
    (CimsetStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const CimsetGraph, what: &str) -> Result<&'a DirectedGraph, (CimsetStatus, String)> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null(what))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (CimsetStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON contains no NUL").into_raw()
}

/// Message of the last failed call on this thread, or NULL after a success.
///
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cimset_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cimset_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a graph in text (`n=3\n1 -> 2`) or JSON (`{"n":3,"edges":[[1,2]]}`) form.
///
/// # Safety
/// `text` must be NUL-terminated and `out` writable. Release the handle with `cimset_graph_free`.
#[no_mangle]
pub unsafe extern "C" fn cimset_graph_parse(text: *const c_char, out: *mut *mut CimsetGraph) -> CimsetStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (CimsetStatus::InvalidUtf8, e.to_string()))?;
        let g = parse_graph(s).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CimsetGraph { inner: g }));
        Ok(())
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges` (tail, head, tail, head, ...).
///
/// # Safety
/// `edges` must point to `2 * edge_count` values (it may be NULL when `edge_count` is 0).
#[no_mangle]
pub unsafe extern "C" fn cimset_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut CimsetGraph,
) -> CimsetStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        if n == 0 || n > cimset::graph::MAX_NODES {
            return Err(lib_err(Error::InvalidNodeCount(n)));
        }
        let g = DirectedGraph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CimsetGraph { inner: g }));
        Ok(())
    })
}

/// Releases a graph handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cimset_graph_free(g: *mut CimsetGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cimset_graph_node_count(g: *const CimsetGraph, out: *mut usize) -> CimsetStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        *out_ref(out, "out")? = g.n();
        Ok(())
    })
}

/// Writes the characteristic imset into `buf` as `2^n - 1` values, nonempty sets
/// ordered by size and then lexicographically.
///
/// `*written` always receives the required length, so a call with `len == 0`
/// queries the size. A short buffer gives `CIMSET_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `buf` must hold `len` values (it may be NULL when `len` is 0); `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cimset_char_imset(
    g: *const CimsetGraph,
    buf: *mut i64,
    len: usize,
    written: *mut usize,
) -> CimsetStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        let written = out_ref(written, "written")?;
        let c = char_imset(g);
        let values: Vec<i64> =
            subsets_by_size(g.n()).into_iter().filter(|s| !s.is_empty()).map(|s| c.get(s)).collect();
        *written = values.len();
        if len < values.len() {
            return Err((
                CimsetStatus::BufferTooSmall,
                format!("buffer holds {len} values, {} needed", values.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        std::slice::from_raw_parts_mut(buf, values.len()).copy_from_slice(&values);
        Ok(())
    })
}

/// Characteristic imset coordinate `c(S)` for the set given as a bitmask (bit `i-1` is node `i`).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cimset_char_imset_at(g: *const CimsetGraph, set_mask: u16, out: *mut i64) -> CimsetStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        let out = out_ref(out, "out")?;
        let s = NodeSet::from_bits(set_mask);
        if s.is_empty() || !s.is_subset(NodeSet::full(g.n())) {
            return Err((CimsetStatus::InvalidArgument, format!("set mask {set_mask:#x} is empty or exceeds n")));
        }
        *out = char_imset(g).get(s);
        Ok(())
    })
}

/// Characteristic imset as a JSON document; free it with `cimset_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cimset_char_imset_json(g: *const CimsetGraph, out: *mut *mut c_char) -> CimsetStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let g = graph_ref(g, "graph")?;
        let doc = serde_json::to_string(&ImsetJson::from_char(&char_imset(g), true))
            .map_err(|e| lib_err(e.into()))?;
        *out = into_c_string(doc);
        Ok(())
    })
}

/// Whether both graphs have the same characteristic imset.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cimset_imset_equivalent(
    g: *const CimsetGraph,
    h: *const CimsetGraph,
    out: *mut bool,
) -> CimsetStatus {
    guard(|| {
        let (g, h) = (graph_ref(g, "g")?, graph_ref(h, "h")?);
        *out_ref(out, "out")? = cimset::imset::imset_equivalent(g, h).map_err(lib_err)?;
        Ok(())
    })
}

/// Number of graphs sharing the characteristic imset of `g` (n at most 6).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cimset_fiber_size(g: *const CimsetGraph, out: *mut usize) -> CimsetStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        let out = out_ref(out, "out")?;
        *out = fiber_enumerate(&char_imset(g)).map_err(lib_err)?.len();
        Ok(())
    })
}

/// Numeric covariance-equivalence check with the default solver settings
/// (50 restarts, tolerance 1e-8) apart from the given trial count and seed.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cimset_covariance_equiv_numeric(
    g: *const CimsetGraph,
    h: *const CimsetGraph,
    trials: usize,
    seed: u64,
    out: *mut CimsetNumericResult,
) -> CimsetStatus {
    guard(|| {
        let (g, h) = (graph_ref(g, "g")?, graph_ref(h, "h")?);
        let out = out_ref(out, "out")?;
        if trials == 0 {
            return Err((CimsetStatus::InvalidArgument, "trials must be positive".into()));
        }
        let cfg = OrthSolverConfig { seed, ..OrthSolverConfig::default() };
        let opts = EquivOptions { trials, ..EquivOptions::default() };
        let v = covariance_equiv_numeric(g, h, &cfg, &opts).map_err(lib_err)?;
        *out = CimsetNumericResult {
            equivalent: v.is_equivalent(),
            max_residual: v.max_residual(),
            min_residual: v.min_residual(),
        };
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cimset_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
