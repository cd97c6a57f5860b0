//! C ABI for septree. Graphs and decompositions are opaque handles; every
//! call returns a [`SeptreeStatus`] and leaves a message for
//! [`septree_last_error`] when it fails. Strings handed out by the library
//! must be released with [`septree_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use septree::cli::{decompose, ProfileFilter};
use septree::profile::{enumerate_k_profiles, k_blocks, ProfileKind};
use septree::strategy::StrategyOptions;
use septree::treedec::{adhesion, labels, to_dot, verify, DecompositionJson, Label, TreeDecomposition};
use septree::{parse_graph, Error, Graph, GraphFormat, Limits};

/// Result of every call. Values 1 to 5 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeptreeStatus {
    Ok = 0,
    Invalid = 1,
    Parse = 2,
    Resource = 3,
    Verification = 4,
    Internal = 5,
    NullPointer = 6,
    Panic = 7,
}

/// Which k-profiles a decomposition has to distinguish.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeptreeProfiles {
    All = 0,
    Blocks = 1,
    Tangles = 2,
}

impl From<SeptreeProfiles> for ProfileFilter {
    fn from(p: SeptreeProfiles) -> Self {
        match p {
            SeptreeProfiles::All => ProfileFilter::All,
            SeptreeProfiles::Blocks => ProfileFilter::Blocks,
            SeptreeProfiles::Tangles => ProfileFilter::Tangles,
        }
    }
}

/// A parsed graph.
pub struct SeptreeGraph {
    graph: Graph,
}

/// A tree-decomposition together with the graph it decomposes.
pub struct SeptreeDecomposition {
    graph: Graph,
    td: TreeDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> SeptreeStatus {
    match e.exit_code() {
        2 => SeptreeStatus::Parse,
        3 => SeptreeStatus::Resource,
        5 => SeptreeStatus::Internal,
        _ => SeptreeStatus::Invalid,
    }
}

struct Failure(SeptreeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(SeptreeStatus::Internal, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SeptreeStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SeptreeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SeptreeStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside septree".into());
            SeptreeStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SeptreeStatus::Invalid, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(SeptreeStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn limits(max_vertices: usize) -> Limits {
    let mut limits = Limits::default();
    if max_vertices > 0 {
        limits.max_vertices = max_vertices;
    }
    limits
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next septree call on the same thread.
#[no_mangle]
pub extern "C" fn septree_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn septree_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an edge list or adjacency JSON document (detected from the text).
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn septree_graph_parse(source: *const c_char, out: *mut *mut SeptreeGraph) -> SeptreeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let source = text(source, "source")?;
        let graph = parse_graph(source, GraphFormat::detect(source))?;
        *out = Box::into_raw(Box::new(SeptreeGraph { graph }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`septree_graph_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn septree_graph_free(g: *mut SeptreeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn septree_graph_vertex_count(g: *const SeptreeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// The k-blocks as a JSON array of vertex lists.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn septree_k_blocks_json(
    g: *const SeptreeGraph,
    k: usize,
    max_vertices: usize,
    out: *mut *mut c_char,
) -> SeptreeStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.graph;
        if out.is_null() {
            return Err(null("out"));
        }
        limits(max_vertices).check_vertices(g.n())?;
        let blocks: Vec<Vec<Label>> = k_blocks(g, k).into_iter().map(|b| labels(g, b)).collect();
        write_string(out, serde_json::to_string(&blocks)?)
    })
}

/// Number of k-profiles and how many of them are block profiles and tangles.
///
/// # Safety
/// `g` must be a live graph handle; the count pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn septree_count_profiles(
    g: *const SeptreeGraph,
    k: usize,
    max_vertices: usize,
    profiles: *mut usize,
    blocks: *mut usize,
    tangles: *mut usize,
) -> SeptreeStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.graph;
        if profiles.is_null() || blocks.is_null() || tangles.is_null() {
            return Err(null("count pointer"));
        }
        let all = enumerate_k_profiles(g, k, &limits(max_vertices))?;
        *profiles = all.len();
        *blocks = all.iter().filter(|p| matches!(p.kind(), ProfileKind::Block(_))).count();
        *tangles = all.iter().filter(|p| p.tangle() == Some(true)).count();
        Ok(())
    })
}

/// Builds the decomposition of the k-strategy `strategy` (for example
/// `"|ext_r"`, repeated for every order) over the chosen profiles.
///
/// # Safety
/// `g` must be a live graph handle, `strategy` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn septree_decompose(
    g: *const SeptreeGraph,
    k: usize,
    strategy: *const c_char,
    profiles: SeptreeProfiles,
    max_vertices: usize,
    out: *mut *mut SeptreeDecomposition,
) -> SeptreeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let graph = &g.as_ref().ok_or_else(|| null("graph"))?.graph;
        let strategy = text(strategy, "strategy")?;
        let limits = limits(max_vertices);
        limits.check_vertices(graph.n())?;
        let (_, td) = decompose(
            graph,
            k,
            strategy,
            profiles.into(),
            &StrategyOptions::default(),
            &limits,
        )?;
        *out = Box::into_raw(Box::new(SeptreeDecomposition {
            graph: graph.clone(),
            td,
        }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from [`septree_decompose`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn septree_decomposition_free(d: *mut SeptreeDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of tree nodes, 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn septree_decomposition_node_count(d: *const SeptreeDecomposition) -> usize {
    d.as_ref().map_or(0, |d| d.td.node_count())
}

/// Largest adhesion set, 0 for a null handle or a single node.
///
/// # Safety
/// `d` must be null or a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn septree_decomposition_adhesion(d: *const SeptreeDecomposition) -> usize {
    d.as_ref().map_or(0, |d| adhesion(&d.td))
}

/// Re-checks the tree-decomposition axioms; `SEPTREE_STATUS_VERIFICATION`
/// when one fails.
///
/// # Safety
/// `d` must be a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn septree_decomposition_verify(d: *const SeptreeDecomposition) -> SeptreeStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("decomposition"))?;
        let report = verify(&d.td, &d.graph, None);
        if report.passed() {
            Ok(())
        } else {
            Err(Failure(SeptreeStatus::Verification, report.to_string()))
        }
    })
}

/// `{"nodes": [...], "edges": [...]}` document.
///
/// # Safety
/// `d` must be a live decomposition handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn septree_decomposition_json(
    d: *const SeptreeDecomposition,
    out: *mut *mut c_char,
) -> SeptreeStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("decomposition"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, serde_json::to_string(&DecompositionJson::new(&d.td, &d.graph))?)
    })
}

/// Graphviz rendering.
///
/// # Safety
/// `d` must be a live decomposition handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn septree_decomposition_dot(
    d: *const SeptreeDecomposition,
    out: *mut *mut c_char,
) -> SeptreeStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("decomposition"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, to_dot(&d.td, &d.graph))
    })
}
