//! C interface to `mve-core`. Instances live behind an opaque handle;
//! every fallible call returns an [`MveStatus`] and leaves a message for
//! [`mve_last_error`]. Strings handed out must be released with
//! [`mve_string_free`]. Vertex and edge ids are 0-indexed here.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use mve_core::cli::{emit_instance, parse_instance, solve, Algorithm, SolveOptions, Variant};
use mve_core::{Graph, Instance, Solution, Violation};

/// Opaque instance handle.
pub struct MveInstance {
    inner: Instance,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MveStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    SolverError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MveViolation {
    None = 0,
    EdgeNotInGraph = 1,
    OverBudget = 2,
    DistanceMismatch = 3,
    DistanceTooSmall = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: MveStatus, message: impl Into<String>) -> MveStatus {
    set_error(message);
    status
}

/// Runs `body`, turning a panic into [`MveStatus::Panic`].
fn guarded(body: impl FnOnce() -> MveStatus) -> MveStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(MveStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MveStatus> {
    if p.is_null() {
        return Err(fail(MveStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(MveStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn hand_out(text: String, out: *mut *mut c_char) -> MveStatus {
    match CString::new(text) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before building the text
            unsafe { *out = c.into_raw() };
            MveStatus::Ok
        }
        Err(_) => fail(MveStatus::SolverError, "output contains a nul byte"),
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mve_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mve_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the text instance format (1-indexed ids, `# k` / `# ell` hints).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mve_instance_parse(text: *const c_char, out: *mut *mut MveInstance) -> MveStatus {
    guarded(|| {
        if out.is_null() {
            return fail(MveStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_instance(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MveInstance { inner }));
                MveStatus::Ok
            }
            Err(e) => fail(MveStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds an instance from `m` edges given as parallel arrays.
///
/// # Safety
/// `us`, `vs` and `lengths` must each point to `m` readable elements (or be
/// null when `m == 0`); `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mve_instance_new(
    n: usize,
    us: *const usize,
    vs: *const usize,
    lengths: *const u64,
    m: usize,
    s: usize,
    t: usize,
    k: usize,
    ell: u64,
    out: *mut *mut MveInstance,
) -> MveStatus {
    guarded(|| {
        if out.is_null() || (m > 0 && (us.is_null() || vs.is_null() || lengths.is_null())) {
            return fail(MveStatus::NullPointer, "null array or output pointer");
        }
        let edges: Vec<(usize, usize, u64)> = if m == 0 {
            Vec::new()
        } else {
            let (us, vs, ls) = (
                std::slice::from_raw_parts(us, m),
                std::slice::from_raw_parts(vs, m),
                std::slice::from_raw_parts(lengths, m),
            );
            (0..m).map(|i| (us[i], vs[i], ls[i])).collect()
        };
        let built = Graph::new(n, edges).and_then(|g| Instance::new(g, s, t, k, ell));
        match built {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MveInstance { inner }));
                MveStatus::Ok
            }
            Err(e) => fail(MveStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `instance` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mve_instance_free(instance: *mut MveInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// # Safety
/// `instance` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn mve_instance_vertex_count(instance: *const MveInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.graph.vertex_count())
}

/// # Safety
/// `instance` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn mve_instance_edge_count(instance: *const MveInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.graph.edge_count())
}

/// Replaces the budget and target.
///
/// # Safety
/// `instance` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mve_instance_set_query(instance: *mut MveInstance, k: usize, ell: u64) -> MveStatus {
    guarded(|| {
        let Some(handle) = instance.as_mut() else {
            return fail(MveStatus::NullPointer, "null instance");
        };
        if ell == 0 {
            return fail(MveStatus::InvalidArgument, "ell must be positive");
        }
        handle.inner = handle.inner.with_budget(k).with_target(ell);
        MveStatus::Ok
    })
}

/// Writes the instance in the text format.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mve_instance_emit(instance: *const MveInstance, out: *mut *mut c_char) -> MveStatus {
    guarded(|| {
        let (Some(handle), false) = (instance.as_ref(), out.is_null()) else {
            return fail(MveStatus::NullPointer, "null instance or output pointer");
        };
        hand_out(emit_instance(&handle.inner), out)
    })
}

/// Solves and stores the JSON result (same schema as `mve solve`, with
/// 1-indexed edge ids) in `*json_out`. `algorithm` and `variant` take the
/// command-line names; `timeout_ms == 0` means no limit.
///
/// # Safety
/// `instance` must be a live handle, the strings nul-terminated, `json_out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mve_solve(
    instance: *const MveInstance,
    algorithm: *const c_char,
    variant: *const c_char,
    kernelize: bool,
    timeout_ms: u64,
    json_out: *mut *mut c_char,
) -> MveStatus {
    guarded(|| {
        let (Some(handle), false) = (instance.as_ref(), json_out.is_null()) else {
            return fail(MveStatus::NullPointer, "null instance or output pointer");
        };
        let parsed = read_str(algorithm).and_then(|a| {
            let v = read_str(variant)?;
            let a: Algorithm = a.parse().map_err(|e: String| fail(MveStatus::InvalidArgument, e))?;
            let v: Variant = v.parse().map_err(|e: String| fail(MveStatus::InvalidArgument, e))?;
            Ok((a, v))
        });
        let (algorithm, variant) = match parsed {
            Ok(p) => p,
            Err(s) => return s,
        };
        let options = SolveOptions {
            algorithm,
            variant,
            kernelize,
            timeout: (timeout_ms > 0).then(|| Duration::from_millis(timeout_ms)),
            ..SolveOptions::default()
        };
        match solve(&handle.inner, &options) {
            Ok(report) => hand_out(serde_json::to_string(&report).expect("report serializes"), json_out),
            Err(e) => {
                let status = match e.exit_code() {
                    2 => MveStatus::InvalidArgument,
                    _ => MveStatus::SolverError,
                };
                fail(status, e.to_string())
            }
        }
    })
}

/// Checks a deletion set (0-indexed edge ids) against the instance's budget
/// and target; the outcome goes to `*violation`.
///
/// # Safety
/// `edges` must point to `len` readable ids (or be null when `len == 0`);
/// `instance` must be a live handle and `violation` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mve_verify(
    instance: *const MveInstance,
    edges: *const usize,
    len: usize,
    violation: *mut MveViolation,
) -> MveStatus {
    guarded(|| {
        let (Some(handle), false) = (instance.as_ref(), violation.is_null()) else {
            return fail(MveStatus::NullPointer, "null instance or output pointer");
        };
        if len > 0 && edges.is_null() {
            return fail(MveStatus::NullPointer, "null edge array");
        }
        let ids = if len == 0 { &[][..] } else { std::slice::from_raw_parts(edges, len) };
        let inst = &handle.inner;
        let m = inst.graph.edge_count();
        let result = match ids.iter().find(|&&e| e >= m) {
            Some(&e) => Err(Violation::EdgeNotInGraph(e)),
            None => Solution::new(&inst.graph, inst.s, inst.t, ids.to_vec()).verify(inst),
        };
        *violation = match result {
            Ok(()) => MveViolation::None,
            Err(v) => {
                set_error(v.to_string());
                match v {
                    Violation::EdgeNotInGraph(_) => MveViolation::EdgeNotInGraph,
                    Violation::OverBudget { .. } => MveViolation::OverBudget,
                    Violation::DistanceMismatch { .. } => MveViolation::DistanceMismatch,
                    Violation::DistanceTooSmall { .. } => MveViolation::DistanceTooSmall,
                }
            }
        };
        MveStatus::Ok
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mve_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
