// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! C ABI for the semicover library.
//!
//! Graphs, list assignments and cover maps cross the boundary as opaque
//! handles, created from the JSON documents of the command line and freed
//! with the matching `*_free` function. Every fallible call returns an
//! [`ScStatus`]; on failure [`sc_last_error`] describes the problem until
//! the next call on the same thread. Strings handed out by the library are
//! released with [`sc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};


use semicover::covering::{verify_list_cover, CoverMap, ListAssignment, Mode};
use semicover::format::{cover_to_string, graph_to_string, parse_cover, parse_graph, parse_lists};
use semicover::graph::generate::Family;
use semicover::graph::Multigraph;
use semicover::solver::{for_each_cover, solve_with, Budget, EnumOptions, SolverOptions, Status};
use semicover::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// A document did not parse.
    Parse = 3,
    /// An argument or document refers to something that does not exist or
    /// is out of range.
    InvalidInput = 4,
    /// The operation does not apply to these inputs.
    Precondition = 5,
    /// The input exceeds a size limit.
    TooLarge = 6,
    /// The search budget ran out.
    ResourceLimit = 7,
    /// An internal error; the library caught a panic.
    Internal = 8,
}

/// Answer of a decision call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScVerdict {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

/// A multigraph with loops and semi-edges.
pub struct ScGraph {
    graph: Multigraph,
}

/// Admissible targets per vertex and edge, resolved against one source and
/// one target graph.
pub struct ScLists {
    lists: ListAssignment,
}

/// Vertex and edge maps from a source graph to a target graph.
pub struct ScCover {
    cover: CoverMap,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> ScStatus {
    match e {
        Error::Parse { .. } => ScStatus::Parse,
        Error::UnknownVertex(_)
        | Error::UnknownEdge(_)
        | Error::DuplicateVertex(_)
        | Error::DuplicateEdge(_)
        | Error::InvalidEdge { .. }
        | Error::InvalidParameter(_)
        | Error::Certificate(_)
        | Error::Io(_) => ScStatus::InvalidInput,
        Error::Precondition(_) | Error::NotColorable(_) => ScStatus::Precondition,
        Error::TooLarge(_) => ScStatus::TooLarge,
    }
}

struct Fail(ScStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, records its error and turns panics into `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ScStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ScStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal error");
            ScStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(ScStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ScStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(ScStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn budget(max_nodes: u64) -> SolverOptions {
    SolverOptions {
        budget: if max_nodes == 0 { Budget::unlimited() } else { Budget::nodes(max_nodes) },
        ..SolverOptions::default()
    }
}

fn lists_or_full(lists: *const ScLists) -> ListAssignment {
    // SAFETY: callers pass null or a live handle.
    unsafe { lists.as_ref() }.map_or_else(ListAssignment::full, |l| l.lists.clone())
}

/// Message of the last failed call on this thread; empty after a success.
/// The string stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_parse(json: *const c_char, out: *mut *mut ScGraph) -> ScStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let doc = parse_graph(text(json, "json")?)?;
        put(out, ScGraph { graph: doc.graph });
        Ok(())
    })
}

/// Builds member `variant` of a named family (`ring`, `sausages`,
/// `one-vertex`, `cycle`, `open-path`, `complete-bipartite`, `triple-edge`,
/// `complete`, `petersen`).
///
/// # Safety
/// `family` is a NUL-terminated string; `params` points to `n_params`
/// values or is null when `n_params` is 0; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_generate(
    family: *const c_char,
    params: *const usize,
    n_params: usize,
    variant: usize,
    out: *mut *mut ScGraph,
) -> ScStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = match n_params {
            0 => &[][..],
            _ if params.is_null() => return Err(null("params")),
            n => std::slice::from_raw_parts(params, n),
        };
        let graphs = Family::parse(text(family, "family")?, params)?.build()?;
        let count = graphs.len();
        let graph = graphs.into_iter().nth(variant).ok_or_else(|| {
            Fail(ScStatus::InvalidInput, format!("variant {variant} requested, the family has {count}"))
        })?;
        put(out, ScGraph { graph });
        Ok(())
    })
}

/// Frees a graph. Null is ignored.
///
/// # Safety
/// `g` is null or a graph from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_free(g: *mut ScGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for null.
///
/// # Safety
/// `g` is null or a live graph.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_vertex_count(g: *const ScGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// Number of edges, semi-edges and loops included; 0 for null.
///
/// # Safety
/// `g` is null or a live graph.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_edge_count(g: *const ScGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Writes the graph document; free it with [`sc_string_free`].
///
/// # Safety
/// `g` is a live graph; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_to_json(g: *const ScGraph, out: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let g = get(g, "g")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, graph_to_string(&g.graph))
    })
}

/// Parses a lists document against source `g` and target `h`.
///
/// # Safety
/// `json` is a NUL-terminated string; `g`, `h` are live graphs; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sc_lists_parse(
    json: *const c_char,
    g: *const ScGraph,
    h: *const ScGraph,
    out: *mut *mut ScLists,
) -> ScStatus {
    guard(|| {
        let (g, h) = (get(g, "g")?, get(h, "h")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let lists = parse_lists(text(json, "json")?)?.resolve(&g.graph, &h.graph)?;
        put(out, ScLists { lists });
        Ok(())
    })
}

/// Frees a list assignment. Null is ignored.
///
/// # Safety
/// `l` is null or a list assignment from this library that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn sc_lists_free(l: *mut ScLists) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Decides whether `g` covers `h` within the lists (null means full lists).
/// `max_nodes` bounds the search, 0 for no bound. On `Yes` and a non-null
/// `witness`, a cover is stored there. Running out of budget sets
/// `Unknown` and returns `ResourceLimit`.
///
/// # Safety
/// `g`, `h` are live graphs; `lists` is null or live; `verdict` is
/// writable; `witness` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sc_solve(
    g: *const ScGraph,
    h: *const ScGraph,
    lists: *const ScLists,
    max_nodes: u64,
    verdict: *mut ScVerdict,
    witness: *mut *mut ScCover,
) -> ScStatus {
    guard(|| {
        let (g, h) = (get(g, "g")?, get(h, "h")?);
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let lists = lists_or_full(lists);
        let out = solve_with(&g.graph, &h.graph, &lists, Mode::Total, &budget(max_nodes))?;
        match out.status {
            Status::Satisfiable(cover) => {
                *verdict = ScVerdict::Yes;
                if !witness.is_null() {
                    put(witness, ScCover { cover });
                }
                Ok(())
            }
            Status::Unsatisfiable => {
                *verdict = ScVerdict::No;
                Ok(())
            }
            Status::ResourceLimit => {
                *verdict = ScVerdict::Unknown;
                Err(Fail(ScStatus::ResourceLimit, "search budget exhausted".into()))
            }
        }
    })
}

/// Counts covers (or partial covers) within the lists, stopping at
/// `limit` when it is non-zero.
///
/// # Safety
/// `g`, `h` are live graphs; `lists` is null or live; `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn sc_count_covers(
    g: *const ScGraph,
    h: *const ScGraph,
    lists: *const ScLists,
    partial: bool,
    limit: usize,
    max_nodes: u64,
    count: *mut usize,
) -> ScStatus {
    guard(|| {
        let (g, h) = (get(g, "g")?, get(h, "h")?);
        if count.is_null() {
            return Err(null("count"));
        }
        let options = EnumOptions {
            mode: if partial { Mode::Partial } else { Mode::Total },
            limit: (limit > 0).then_some(limit),
            distinct_vertex_maps: false,
            solver: budget(max_nodes),
        };
        let summary = for_each_cover(&g.graph, &h.graph, &lists_or_full(lists), &options, |_| true)?;
        *count = summary.count;
        if summary.resource_limit {
            return Err(Fail(ScStatus::ResourceLimit, "search budget exhausted".into()));
        }
        Ok(())
    })
}

/// Parses a cover document from `g` to `h`.
///
/// # Safety
/// `json` is a NUL-terminated string; `g`, `h` are live graphs; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sc_cover_parse(
    json: *const c_char,
    g: *const ScGraph,
    h: *const ScGraph,
    out: *mut *mut ScCover,
) -> ScStatus {
    guard(|| {
        let (g, h) = (get(g, "g")?, get(h, "h")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let cover = parse_cover(text(json, "json")?, &g.graph, &h.graph)?;
        put(out, ScCover { cover });
        Ok(())
    })
}

/// Writes the cover document; free it with [`sc_string_free`].
///
/// # Safety
/// `c` is a live cover from `g` to `h`; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sc_cover_to_json(
    c: *const ScCover,
    g: *const ScGraph,
    h: *const ScGraph,
    out: *mut *mut c_char,
) -> ScStatus {
    guard(|| {
        let (c, g, h) = (get(c, "c")?, get(g, "g")?, get(h, "h")?);
        if out.is_null() {
            return Err(null("out"));
        }
        if c.cover.vmap.len() != g.graph.vertex_count() || c.cover.emap.len() != g.graph.edge_count() {
            return Err(Fail(ScStatus::InvalidInput, "cover does not match the source graph".into()));
        }
        if c.cover.vmap.iter().any(|&x| x >= h.graph.vertex_count())
            || c.cover.emap.iter().any(|&t| t >= h.graph.edge_count())
        {
            return Err(Fail(ScStatus::InvalidInput, "cover does not match the target graph".into()));
        }
        put_string(out, cover_to_string(&c.cover, &g.graph, &h.graph))
    })
}

/// Index of the image of vertex `v`, or `SIZE_MAX` when out of range.
///
/// # Safety
/// `c` is null or a live cover.
#[no_mangle]
pub unsafe extern "C" fn sc_cover_vertex_image(c: *const ScCover, v: usize) -> usize {
    c.as_ref().and_then(|c| c.cover.vmap.get(v).copied()).unwrap_or(usize::MAX)
}

/// Frees a cover. Null is ignored.
///
/// # Safety
/// `c` is null or a cover from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sc_cover_free(c: *mut ScCover) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Checks that `c` is a (partial) covering projection respecting the lists
/// (null means full lists). A failed check sets `No` and leaves the reason
/// in [`sc_last_error`] while returning `Ok`.
///
/// # Safety
/// `c` is a live cover; `g`, `h` are live graphs; `lists` is null or live;
/// `verdict` is writable.
#[no_mangle]
pub unsafe extern "C" fn sc_verify(
    c: *const ScCover,
    g: *const ScGraph,
    h: *const ScGraph,
    lists: *const ScLists,
    partial: bool,
    verdict: *mut ScVerdict,
) -> ScStatus {
    let mut reason = None;
    let status = guard(|| {
        let (c, g, h) = (get(c, "c")?, get(g, "g")?, get(h, "h")?);
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let mode = if partial { Mode::Partial } else { Mode::Total };
        match verify_list_cover(&g.graph, &h.graph, &c.cover, &lists_or_full(lists), mode) {
            Ok(_) => *verdict = ScVerdict::Yes,
            Err(v) => {
                *verdict = ScVerdict::No;
                reason = Some(v.to_string());
            }
        }
        Ok(())
    });
    if let Some(r) = reason {
        set_error(&r);
    }
    status
}

