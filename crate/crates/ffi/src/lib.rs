//! C ABI for msvc-core.
//!
//! Graphs and solutions are opaque heap handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`MsvcStatus`]; on failure a description is available from
//! [`msvc_last_error_message`] on the same thread. Vertices are 0-based.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use msvc_core::io::parse_graph;
use msvc_core::report::{solve, Algorithm, RunConfig, SolveReport};
use msvc_core::{evaluate_cost, Error, Graph, VertexOrdering};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsvcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Precondition = 3,
    SizeLimit = 4,
    ParameterExceeded = 5,
    Budget = 6,
    Overflow = 7,
    Parse = 8,
    Internal = 9,
    /// Output buffer too small.
    BufferTooSmall = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsvcAlgorithm {
    Brute = 0,
    Greedy = 1,
    Vc = 2,
    Cm = 3,
    /// Vertex cover solver if the cover is small enough, then the clique
    /// modulator solver, then brute force.
    Auto = 4,
}

fn algorithm_from_raw(raw: u32) -> Option<Algorithm> {
    Some(match raw {
        0 => Algorithm::Brute,
        1 => Algorithm::Greedy,
        2 => Algorithm::Vc,
        3 => Algorithm::Cm,
        4 => Algorithm::Auto,
        _ => return None,
    })
}

/// Mutable edge set; converted to a validated graph when solved.
pub struct MsvcGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl MsvcGraph {
    fn build(&self) -> Result<Graph, Error> {
        Graph::new(self.n, self.edges.iter().copied())
    }
}

pub struct MsvcSolution {
    report: SolveReport,
    /// 0-based vertex ids by position.
    sequence: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> MsvcStatus {
    let status = match e {
        Error::InvalidInput(_) => MsvcStatus::InvalidInput,
        Error::Precondition(_) => MsvcStatus::Precondition,
        Error::SizeLimit { .. } => MsvcStatus::SizeLimit,
        Error::ParameterExceeded { .. } => MsvcStatus::ParameterExceeded,
        Error::Budget { .. } => MsvcStatus::Budget,
        Error::Overflow(_) => MsvcStatus::Overflow,
        Error::Parse { .. } => MsvcStatus::Parse,
        Error::Internal(_) => MsvcStatus::Internal,
    };
    set_error(e.to_string());
    status
}

fn null(what: &str) -> MsvcStatus {
    set_error(format!("{what} is null"));
    MsvcStatus::NullPointer
}

fn guarded(f: impl FnOnce() -> MsvcStatus) -> MsvcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("panic inside msvc".into());
        MsvcStatus::Panic
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn msvc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// New graph with `n` vertices and no edges.
#[no_mangle]
pub extern "C" fn msvc_graph_new(n: usize) -> *mut MsvcGraph {
    Box::into_raw(Box::new(MsvcGraph {
        n,
        edges: BTreeSet::new(),
    }))
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn msvc_graph_free(graph: *mut MsvcGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Adds the undirected edge `{u, v}`. Self-loops, duplicates and
/// out-of-range vertices are rejected with `InvalidInput`.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msvc_graph_add_edge(
    graph: *mut MsvcGraph,
    u: usize,
    v: usize,
) -> MsvcStatus {
    let Some(g) = graph.as_mut() else {
        return null("graph");
    };
    if u >= g.n || v >= g.n {
        return fail(Error::InvalidInput(format!(
            "edge ({u}, {v}) outside 0..{}",
            g.n
        )));
    }
    if u == v {
        return fail(Error::InvalidInput(format!("self-loop at vertex {u}")));
    }
    if !g.edges.insert((u.min(v), u.max(v))) {
        return fail(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
    }
    MsvcStatus::Ok
}

/// Parses the edge-list text format (`n m` header, 1-based `u v` lines).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn msvc_graph_parse(
    text: *const c_char,
    out: *mut *mut MsvcGraph,
) -> MsvcStatus {
    if text.is_null() {
        return null("text");
    }
    if out.is_null() {
        return null("out");
    }
    guarded(|| {
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(Error::InvalidInput("text is not UTF-8".into()));
        };
        match parse_graph(text) {
            Ok(g) => {
                let handle = MsvcGraph {
                    n: g.num_vertices(),
                    edges: g.edges().iter().copied().collect(),
                };
                *out = Box::into_raw(Box::new(handle));
                MsvcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msvc_graph_num_vertices(graph: *const MsvcGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.n)
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msvc_graph_num_edges(graph: *const MsvcGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.edges.len())
}

/// Cost of the ordering that lists vertex `order[i]` at position `i + 1`.
///
/// # Safety
/// `graph` must be a live handle, `order` must point to `len` readable
/// values and `cost` must be writable.
#[no_mangle]
pub unsafe extern "C" fn msvc_evaluate_cost(
    graph: *const MsvcGraph,
    order: *const usize,
    len: usize,
    cost: *mut u64,
) -> MsvcStatus {
    let Some(g) = graph.as_ref() else {
        return null("graph");
    };
    if order.is_null() && len > 0 {
        return null("order");
    }
    if cost.is_null() {
        return null("cost");
    }
    guarded(|| {
        let seq = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(order, len).to_vec()
        };
        let result = g
            .build()
            .and_then(|graph| evaluate_cost(&graph, &VertexOrdering::from_sequence(seq)?));
        match result {
            Ok(c) => {
                *cost = c;
                MsvcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Solves `graph` with `algorithm`, one of the [`MsvcAlgorithm`] values.
/// `max_k` bounds the vertex cover or clique modulator size; `budget`
/// overrides the search budget when nonzero. On success `*out` receives a solution handle.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn msvc_solve(
    graph: *const MsvcGraph,
    algorithm: u32,
    max_k: usize,
    budget: u64,
    out: *mut *mut MsvcSolution,
) -> MsvcStatus {
    let Some(g) = graph.as_ref() else {
        return null("graph");
    };
    if out.is_null() {
        return null("out");
    }
    let Some(algorithm) = algorithm_from_raw(algorithm) else {
        return fail(Error::InvalidInput(format!(
            "unknown algorithm {algorithm}"
        )));
    };
    guarded(|| {
        let cfg = RunConfig {
            max_k,
            budget: (budget > 0).then_some(budget),
            ..RunConfig::default()
        };
        match g.build().and_then(|graph| solve(&graph, algorithm, &cfg)) {
            Ok(report) => {
                let sequence = report.ordering.iter().map(|&v| v - 1).collect();
                *out = Box::into_raw(Box::new(MsvcSolution { report, sequence }));
                MsvcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `solution` must be null or a handle from [`msvc_solve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn msvc_solution_free(solution: *mut MsvcSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msvc_solution_cost(solution: *const MsvcSolution) -> u64 {
    solution.as_ref().map_or(0, |s| s.report.cost)
}

/// Parameter value used by the solver, or -1 for brute force and greedy.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msvc_solution_parameter(solution: *const MsvcSolution) -> i64 {
    solution
        .as_ref()
        .and_then(|s| s.report.k)
        .map_or(-1, |k| k as i64)
}

/// The algorithm that produced the solution (resolved when `Auto` was asked).
///
/// # Safety
/// `solution` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn msvc_solution_algorithm(solution: *const MsvcSolution) -> MsvcAlgorithm {
    match solution.as_ref().map(|s| s.report.algorithm.as_str()) {
        Some("brute") => MsvcAlgorithm::Brute,
        Some("greedy") => MsvcAlgorithm::Greedy,
        Some("vc") => MsvcAlgorithm::Vc,
        Some("cm") => MsvcAlgorithm::Cm,
        _ => MsvcAlgorithm::Auto,
    }
}

/// Number of vertices in the ordering.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msvc_solution_len(solution: *const MsvcSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.sequence.len())
}

/// Copies the ordering (0-based vertex ids by position) into `buf`, which
/// must hold at least [`msvc_solution_len`] entries.
///
/// # Safety
/// `solution` must be a live handle and `buf` must point to `capacity`
/// writable values.
#[no_mangle]
pub unsafe extern "C" fn msvc_solution_ordering(
    solution: *const MsvcSolution,
    buf: *mut usize,
    capacity: usize,
) -> MsvcStatus {
    let Some(s) = solution.as_ref() else {
        return null("solution");
    };
    if s.sequence.len() > capacity {
        set_error(format!(
            "ordering has {} entries, buffer holds {capacity}",
            s.sequence.len()
        ));
        return MsvcStatus::BufferTooSmall;
    }
    if s.sequence.is_empty() {
        return MsvcStatus::Ok;
    }
    if buf.is_null() {
        return null("buf");
    }
    ptr::copy_nonoverlapping(s.sequence.as_ptr(), buf, s.sequence.len());
    MsvcStatus::Ok
}
