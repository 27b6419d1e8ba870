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

//! JSON documents for graphs, lists and covering maps.
//!
//! Graph document (`format` is optional on input):
//!
//! ```text
//! { "format": "semicover-graph/1",
//!   "vertices": ["a", "b"],
//!   "edges": [ {"id": "e1", "kind": "ordinary", "ends": ["a", "b"]},
//!              {"id": "l",  "kind": "loop",     "ends": ["a"]} ],
//!   "lists": { "vertices": {"a": ["x"]}, "edges": {"e1": ["h1", "h2"]} },
//!   "reduction": { ... } }
//! ```
//!
//! `lists` and `reduction` are optional. Lists document: `format`
//! `semicover-lists/1` with the `vertices` and `edges` maps. Cover document:
//! `format` `semicover-cover/1` with maps `vmap` and `emap` from source ids
//! to target ids. Errors name the offending JSON path, or line and column
//! for syntax errors.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::covering::{CoverMap, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};

pub const GRAPH_FORMAT: &str = "semicover-graph/1";
pub const LISTS_FORMAT: &str = "semicover-lists/1";
pub const COVER_FORMAT: &str = "semicover-cover/1";

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawLists {
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub vertices: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub edges: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    kind: String,
    ends: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<String>,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lists: Option<RawLists>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reduction: Option<serde_json::Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawListsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    vertices: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    edges: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<String>,
    vmap: IndexMap<String, String>,
    emap: IndexMap<String, String>,
}

/// A parsed graph document.
#[derive(Clone, Debug)]
pub struct GraphDocument {
    pub graph: Multigraph,
    /// Lists by id; they need the target graph to be resolved.
    pub lists: Option<RawLists>,
    pub reduction: Option<serde_json::Value>,
}

fn syntax(err: serde_json::Error) -> Error {
    let position = format!("line {}, column {}", err.line(), err.column());
    let message = err.to_string();
    let suffix = format!(" at line {} column {}", err.line(), err.column());
    let message = message.strip_suffix(&suffix).unwrap_or(&message).to_owned();
    Error::parse(position, message)
}

fn check_format(found: &Option<String>, want: &str) -> Result<()> {
    match found {
        Some(f) if f != want => Err(Error::parse(
            "format",
            format!("expected `{want}`, found `{f}`"),
        )),
        _ => Ok(()),
    }
}

pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    let raw: RawGraph = serde_json::from_str(text).map_err(syntax)?;
    check_format(&raw.format, GRAPH_FORMAT)?;
    let mut g = Multigraph::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        g.add_vertex(v.clone())
            .map_err(|e| Error::parse(format!("vertices[{i}]"), e.to_string()))?;
    }
    for (i, e) in raw.edges.iter().enumerate() {
        let kind = EdgeKind::parse(&e.kind).ok_or_else(|| {
            Error::parse(
                format!("edges[{i}].kind"),
                format!("unknown edge kind `{}` (expected ordinary, loop or semi)", e.kind),
            )
        })?;
        let mut ends = Vec::with_capacity(2);
        for (j, v) in e.ends.iter().enumerate() {
            ends.push(g.vertex(v).ok_or_else(|| {
                Error::parse(
                    format!("edges[{i}].ends[{j}]"),
                    format!("dangling endpoint `{v}`"),
                )
            })?);
        }
        let (a, b) = match (kind, ends.as_slice()) {
            (EdgeKind::Ordinary, [a, b]) => (*a, *b),
            (EdgeKind::Loop | EdgeKind::Semi, [a]) => (*a, *a),
            _ => {
                let want = if kind == EdgeKind::Ordinary { 2 } else { 1 };
                return Err(Error::parse(
                    format!("edges[{i}].ends"),
                    format!("{kind} edge needs {want} endpoint(s), got {}", ends.len()),
                ));
            }
        };
        g.add_edge(e.id.clone(), kind, a, b)
            .map_err(|err| Error::parse(format!("edges[{i}]"), err.to_string()))?;
    }
    Ok(GraphDocument {
        graph: g,
        lists: raw.lists,
        reduction: raw.reduction,
    })
}

fn raw_graph(g: &Multigraph) -> RawGraph {
    RawGraph {
        format: Some(GRAPH_FORMAT.to_string()),
        vertices: g.vertex_ids().to_vec(),
        edges: g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| RawEdge {
                id: e.id.clone(),
                kind: e.kind.as_str().to_string(),
                ends: g.edge_ends_ids(i).into_iter().map(String::from).collect(),
            })
            .collect(),
        lists: None,
        reduction: None,
    }
}

pub fn graph_to_string(g: &Multigraph) -> String {
    serde_json::to_string_pretty(&raw_graph(g)).expect("serializable")
}

/// A graph document carrying lists and reduction metadata.
pub fn graph_document_to_string(
    g: &Multigraph,
    lists: Option<&RawLists>,
    reduction: Option<serde_json::Value>,
) -> String {
    let mut raw = raw_graph(g);
    raw.lists = lists.filter(|l| !l.vertices.is_empty() || !l.edges.is_empty()).cloned();
    raw.reduction = reduction;
    serde_json::to_string_pretty(&raw).expect("serializable")
}

impl RawLists {
    /// Resolves ids against source `g` and target `h`.
    pub fn resolve(&self, g: &Multigraph, h: &Multigraph) -> Result<ListAssignment> {
        let mut out = ListAssignment::full();
        for (v, targets) in &self.vertices {
            let gv = g.vertex(v).ok_or_else(|| {
                Error::parse(format!("lists.vertices.{v}"), "not a vertex of the source graph")
            })?;
            let mut set = std::collections::BTreeSet::new();
            for (j, x) in targets.iter().enumerate() {
                set.insert(h.vertex(x).ok_or_else(|| {
                    Error::parse(
                        format!("lists.vertices.{v}[{j}]"),
                        format!("`{x}` is not a vertex of the target graph"),
                    )
                })?);
            }
            out.vertices.insert(gv, set);
        }
        for (e, targets) in &self.edges {
            let ge = g.edge_by_id(e).ok_or_else(|| {
                Error::parse(format!("lists.edges.{e}"), "not an edge of the source graph")
            })?;
            let mut set = std::collections::BTreeSet::new();
            for (j, x) in targets.iter().enumerate() {
                set.insert(h.edge_by_id(x).ok_or_else(|| {
                    Error::parse(
                        format!("lists.edges.{e}[{j}]"),
                        format!("`{x}` is not an edge of the target graph"),
                    )
                })?);
            }
            out.edges.insert(ge, set);
        }
        Ok(out)
    }

    pub fn from_assignment(lists: &ListAssignment, g: &Multigraph, h: &Multigraph) -> RawLists {
        RawLists {
            vertices: lists
                .vertices
                .iter()
                .map(|(&v, l)| {
                    (
                        g.vertex_id(v).to_string(),
                        l.iter().map(|&x| h.vertex_id(x).to_string()).collect(),
                    )
                })
                .collect(),
            edges: lists
                .edges
                .iter()
                .map(|(&e, l)| {
                    (
                        g.edge(e).id.clone(),
                        l.iter().map(|&f| h.edge(f).id.clone()).collect(),
                    )
                })
                .collect(),
        }
    }
}

pub fn parse_lists(text: &str) -> Result<RawLists> {
    let raw: RawListsDoc = serde_json::from_str(text).map_err(syntax)?;
    check_format(&raw.format, LISTS_FORMAT)?;
    Ok(RawLists {
        vertices: raw.vertices,
        edges: raw.edges,
    })
}

pub fn lists_to_string(lists: &ListAssignment, g: &Multigraph, h: &Multigraph) -> String {
    let raw = RawLists::from_assignment(lists, g, h);
    let doc = RawListsDoc {
        format: Some(LISTS_FORMAT.to_string()),
        vertices: raw.vertices,
        edges: raw.edges,
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Parses a cover document; the map must be total on `g`.
pub fn parse_cover(text: &str, g: &Multigraph, h: &Multigraph) -> Result<CoverMap> {
    let raw: RawCover = serde_json::from_str(text).map_err(syntax)?;
    check_format(&raw.format, COVER_FORMAT)?;
    let mut vmap = vec![usize::MAX; g.vertex_count()];
    for (v, x) in &raw.vmap {
        let gv = g
            .vertex(v)
            .ok_or_else(|| Error::parse(format!("vmap.{v}"), "not a vertex of the source graph"))?;
        vmap[gv] = h.vertex(x).ok_or_else(|| {
            Error::parse(format!("vmap.{v}"), format!("`{x}` is not a vertex of the target graph"))
        })?;
    }
    let mut emap = vec![usize::MAX; g.edge_count()];
    for (e, f) in &raw.emap {
        let ge = g
            .edge_by_id(e)
            .ok_or_else(|| Error::parse(format!("emap.{e}"), "not an edge of the source graph"))?;
        emap[ge] = h.edge_by_id(f).ok_or_else(|| {
            Error::parse(format!("emap.{e}"), format!("`{f}` is not an edge of the target graph"))
        })?;
    }
    if let Some(v) = vmap.iter().position(|&x| x == usize::MAX) {
        return Err(Error::parse("vmap", format!("map is not total: `{}` missing", g.vertex_id(v))));
    }
    if let Some(e) = emap.iter().position(|&x| x == usize::MAX) {
        return Err(Error::parse("emap", format!("map is not total: `{}` missing", g.edge(e).id)));
    }
    Ok(CoverMap { vmap, emap })
}

pub fn cover_to_value(f: &CoverMap, g: &Multigraph, h: &Multigraph) -> serde_json::Value {
    let raw = RawCover {
        format: Some(COVER_FORMAT.to_string()),
        vmap: f
            .vmap
            .iter()
            .enumerate()
            .map(|(v, &x)| (g.vertex_id(v).to_string(), h.vertex_id(x).to_string()))
            .collect(),
        emap: f
            .emap
            .iter()
            .enumerate()
            .map(|(e, &t)| (g.edge(e).id.clone(), h.edge(t).id.clone()))
            .collect(),
    };
    serde_json::to_value(raw).expect("serializable")
}

pub fn cover_to_string(f: &CoverMap, g: &Multigraph, h: &Multigraph) -> String {
    serde_json::to_string_pretty(&cover_to_value(f, g, h)).expect("serializable")
}
