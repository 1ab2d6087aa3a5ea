//! C ABI over the core library: opaque handles, integer status codes, a
//! thread-local last-error message, and JSON strings for all structured data.
//!
//! Every boundary function catches panics, so callers only ever see status
//! codes. Returned strings are heap allocations owned by the caller until
//! dg_string_free; handles until dg_graph_free / dg_drawing_free.

use dualgrid::generate::{platonic, sparsified, triangulation};
use dualgrid::graph::PlanarGraph;
use dualgrid::labeling::find_labeling;
use dualgrid::placement::{place, quad_for_drawing, Drawing, Engine};
use dualgrid::quad::{BendTarget, QuadGraph};
use dualgrid::render::{render_svg, RenderStyle};
use dualgrid::verify::{check_requirements, check_strict_convexity, Report};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of every fallible call. Nonzero codes leave a message for
/// dg_last_error() on the calling thread.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgStatus {
    /// The call succeeded and any out parameter was written.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A scalar argument was out of range.
    InvalidArgument = 3,
    /// Input JSON was malformed or described an unusable graph or drawing.
    Parse = 4,
    /// The graph is not simple, planar, and 3-connected as required.
    Unsuitable = 5,
    /// Verification ran; at least one check failed (the report says which).
    ChecksFailed = 6,
    /// An internal invariant broke. The library state is still consistent.
    Panic = 7,
}

/// Which of the two interlocking drawings takes the single bent edge.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgBend {
    /// Bend an edge of the input graph.
    Primal = 0,
    /// Bend an edge of its dual.
    Dual = 1,
}

/// Coordinate engine: both produce identical drawings.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgEngine {
    /// Absolute coordinates, quadratic shifts. Simple and traceable.
    Reference = 0,
    /// Relative offsets, near-linear. The default for large inputs.
    Offset = 1,
}

/// An embedded planar graph with a distinguished outer face.
pub struct DgGraph {
    g: PlanarGraph,
}

/// A finished grid drawing of a graph and its dual, with the context
/// needed to serialize, verify, and render it.
pub struct DgDrawing {
    q: QuadGraph,
    d: Drawing,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let mut s = msg.into();
    s.retain(|c| c != '\0');
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(s).expect("no interior NUL")));
}

fn fail(code: DgStatus, msg: impl Into<String>) -> DgStatus {
    set_error(msg);
    code
}

/// Message for the most recent failing call on this thread, or null if no
/// call has failed yet. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn dg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Run a boundary body, converting panics into DgStatus::Panic.
fn guarded<F: FnOnce() -> DgStatus>(f: F) -> DgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            fail(DgStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

/// Borrow a required C string argument.
unsafe fn arg_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, DgStatus> {
    if p.is_null() {
        return Err(fail(DgStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(DgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// Borrow a required handle argument.
unsafe fn arg_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, DgStatus> {
    p.as_ref()
        .ok_or_else(|| fail(DgStatus::NullArgument, format!("{what} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), DgStatus> {
    if out.is_null() {
        Err(fail(DgStatus::NullArgument, "out pointer is null"))
    } else {
        Ok(())
    }
}

/// Hand a Rust string to the caller. Interior NULs cannot occur in the JSON
/// and SVG this library produces, but scrub defensively.
unsafe fn give_string(out: *mut *mut c_char, s: String) -> DgStatus {
    let mut s = s;
    s.retain(|c| c != '\0');
    *out = CString::new(s).expect("no interior NUL").into_raw();
    DgStatus::Ok
}

/// Parse a graph from its JSON form: named vertices, rotation lists in
/// counterclockwise order, and a distinguished outer face.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_parse(
    json: *const c_char,
    out: *mut *mut DgGraph,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(out) {
            return e;
        }
        let json = match arg_str(json, "json") {
            Ok(s) => s,
            Err(e) => return e,
        };
        match PlanarGraph::from_json(json) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DgGraph { g }));
                DgStatus::Ok
            }
            Err(e) => fail(DgStatus::Parse, e.to_string()),
        }
    })
}

/// Generate a test graph. `kind` selects the family:
/// - "platonic": `name` is one of tetrahedron, cube, octahedron,
///   dodecahedron, icosahedron; `n`, `seed`, `rate` are ignored.
/// - "triangulation": random planar triangulation on `n` >= 4 vertices,
///   deterministic in `seed`; `name`, `rate` ignored.
/// - "sparsified": triangulation with about `rate` (in [0, 1)) of its
///   edges removed while staying 3-connected.
///
/// # Safety
/// `kind` must be valid; `name` may be null unless kind is "platonic";
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_generate(
    kind: *const c_char,
    name: *const c_char,
    n: usize,
    seed: u64,
    rate: f64,
    out: *mut *mut DgGraph,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(out) {
            return e;
        }
        let kind = match arg_str(kind, "kind") {
            Ok(s) => s,
            Err(e) => return e,
        };
        let made = match kind {
            "platonic" => {
                let name = match arg_str(name, "name") {
                    Ok(s) => s,
                    Err(e) => return e,
                };
                platonic(name)
            }
            "triangulation" => triangulation(n, seed),
            "sparsified" => {
                if !(0.0..1.0).contains(&rate) {
                    return fail(
                        DgStatus::InvalidArgument,
                        format!("rate {rate} outside [0, 1)"),
                    );
                }
                sparsified(n, seed, rate)
            }
            other => {
                return fail(DgStatus::InvalidArgument, format!("unknown kind {other:?}"))
            }
        };
        match made {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DgGraph { g }));
                DgStatus::Ok
            }
            Err(e) => fail(DgStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Serialize a graph back to its JSON form.
///
/// # Safety
/// `g` must be a live handle from this library; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_to_json(
    g: *const DgGraph,
    out: *mut *mut c_char,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(out) {
            return e;
        }
        match arg_ref(g, "graph") {
            Ok(h) => give_string(out, h.g.to_json()),
            Err(e) => e,
        }
    })
}

/// Release a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must be null or a live handle from this library, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_free(g: *mut DgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

fn embed_impl(
    g: &PlanarGraph,
    bend: BendTarget,
    engine: Engine,
    outer: Option<(&str, &str)>,
    check_three_connected: bool,
) -> Result<DgDrawing, (DgStatus, String)> {
    if check_three_connected {
        g.check_three_connected()
            .map_err(|e| (DgStatus::Unsuitable, e.to_string()))?;
    }
    let q = match outer {
        Some((a, b)) => QuadGraph::build_with_edge(g.clone(), bend, a, b),
        None => QuadGraph::build(g.clone(), bend),
    }
    .map_err(|e| (DgStatus::Unsuitable, e.to_string()))?;
    let lab = find_labeling(&q).map_err(|e| (DgStatus::Unsuitable, e.to_string()))?;
    let d = place(&q, &lab, engine);
    Ok(DgDrawing { q, d })
}

/// Embed the graph and its dual on the (2n-2) x (2n-2) grid, n being the
/// vertex plus face count. `outer_a`/`outer_b` optionally pin the outer
/// edge by vertex name (both null to let the library choose). Set
/// `check_three_connected` to reject unsuitable inputs up front.
///
/// # Safety
/// `g` must be a live handle; `outer_a`/`outer_b` null together or valid
/// strings together; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_embed(
    g: *const DgGraph,
    bend: DgBend,
    engine: DgEngine,
    outer_a: *const c_char,
    outer_b: *const c_char,
    check_three_connected: bool,
    out: *mut *mut DgDrawing,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(out) {
            return e;
        }
        let g = match arg_ref(g, "graph") {
            Ok(h) => h,
            Err(e) => return e,
        };
        let outer = match (outer_a.is_null(), outer_b.is_null()) {
            (true, true) => None,
            (false, false) => {
                let a = match arg_str(outer_a, "outer_a") {
                    Ok(s) => s,
                    Err(e) => return e,
                };
                let b = match arg_str(outer_b, "outer_b") {
                    Ok(s) => s,
                    Err(e) => return e,
                };
                Some((a, b))
            }
            _ => {
                return fail(
                    DgStatus::InvalidArgument,
                    "outer_a and outer_b must be both null or both set",
                )
            }
        };
        let bend = match bend {
            DgBend::Primal => BendTarget::Primal,
            DgBend::Dual => BendTarget::Dual,
        };
        let engine = match engine {
            DgEngine::Reference => Engine::Reference,
            DgEngine::Offset => Engine::Offset,
        };
        match embed_impl(&g.g, bend, engine, outer, check_three_connected) {
            Ok(h) => {
                *out = Box::into_raw(Box::new(h));
                DgStatus::Ok
            }
            Err((code, msg)) => fail(code, msg),
        }
    })
}

/// Parse a drawing (as produced by dg_drawing_to_json) against the graph it
/// draws. The bend target and bent edge are read from the drawing itself.
///
/// # Safety
/// `g` must be a live handle, `json` a valid string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_drawing_parse(
    g: *const DgGraph,
    json: *const c_char,
    out: *mut *mut DgDrawing,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(out) {
            return e;
        }
        let g = match arg_ref(g, "graph") {
            Ok(h) => h,
            Err(e) => return e,
        };
        let json = match arg_str(json, "json") {
            Ok(s) => s,
            Err(e) => return e,
        };
        let q = match quad_for_drawing(g.g.clone(), json) {
            Ok(q) => q,
            Err(e) => return fail(DgStatus::Parse, e.to_string()),
        };
        match Drawing::from_json(json, &q) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(DgDrawing { q, d }));
                DgStatus::Ok
            }
            Err(e) => fail(DgStatus::Parse, e.to_string()),
        }
    })
}

/// Serialize a drawing to JSON: one grid point per primal and dual vertex,
/// the bent edge with its bend point, and the repair counters.
///
/// # Safety
/// `d` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_drawing_to_json(
    d: *const DgDrawing,
    out: *mut *mut c_char,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(out) {
            return e;
        }
        match arg_ref(d, "drawing") {
            Ok(h) => give_string(out, h.d.to_json(&h.q)),
            Err(e) => e,
        }
    })
}

/// Check a drawing against every requirement (grid bounds, distinct points,
/// the single bend, planarity of both drawings, crossings exactly between
/// corresponding primal/dual edge pairs, duals strictly inside their faces,
/// the outer dual strictly outside, and strict convexity of the inner
/// quadrangle faces). Writes the full report as JSON whether or not all
/// checks pass; returns Ok only when they all do.
///
/// # Safety
/// `d` must be a live handle; `report_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_verify(
    d: *const DgDrawing,
    report_json: *mut *mut c_char,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(report_json) {
            return e;
        }
        let h = match arg_ref(d, "drawing") {
            Ok(h) => h,
            Err(e) => return e,
        };
        let report: Report =
            check_requirements(&h.q, &h.d).merged(check_strict_convexity(&h.q, &h.d));
        let all_pass = report.all_pass;
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        let total = report.checks.len();
        let status = give_string(report_json, report.to_json());
        if status != DgStatus::Ok {
            return status;
        }
        if all_pass {
            DgStatus::Ok
        } else {
            fail(
                DgStatus::ChecksFailed,
                format!("verification failed: {failed} of {total} checks"),
            )
        }
    })
}

/// Render a drawing as a standalone SVG document. `scale` is pixels per
/// grid unit (at least 1); `show_grid` draws the integer lattice.
///
/// # Safety
/// `d` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_render_svg(
    d: *const DgDrawing,
    scale: u32,
    show_grid: bool,
    out: *mut *mut c_char,
) -> DgStatus {
    guarded(|| {
        if let Err(e) = check_out(out) {
            return e;
        }
        if scale == 0 {
            return fail(DgStatus::InvalidArgument, "scale must be at least 1");
        }
        let h = match arg_ref(d, "drawing") {
            Ok(h) => h,
            Err(e) => return e,
        };
        let style = RenderStyle {
            scale,
            show_grid,
            ..RenderStyle::default()
        };
        give_string(out, render_svg(&h.q, &h.d, &style))
    })
}

/// Release a drawing handle. Null is a no-op.
///
/// # Safety
/// `d` must be null or a live handle from this library, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dg_drawing_free(d: *mut DgDrawing) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
