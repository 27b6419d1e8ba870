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

//! Multigraphs with ordinary edges, loops and semi-edges.
//!
//! Vertices and edges carry opaque string ids and are stored in insertion
//! order; algorithms address them by their index in that order.

pub mod generate;
pub mod iso;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Ordinary,
    Loop,
    Semi,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Ordinary => "ordinary",
            EdgeKind::Loop => "loop",
            EdgeKind::Semi => "semi",
        }
    }

    pub fn parse(s: &str) -> Option<EdgeKind> {
        match s {
            "ordinary" => Some(EdgeKind::Ordinary),
            "loop" => Some(EdgeKind::Loop),
            "semi" => Some(EdgeKind::Semi),
            _ => None,
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexClass {
    Simple,
    SemiSimple,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub kind: EdgeKind,
    /// Both endpoints; equal for loops and semi-edges.
    pub ends: [usize; 2],
}

impl Edge {
    /// The endpoint opposite to `v` (or `v` itself for loops and semi-edges).
    #[inline]
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    /// Number of edge-ends this edge contributes at `v`.
    #[inline]
    pub fn ends_at(&self, v: usize) -> usize {
        match self.kind {
            EdgeKind::Loop if self.ends[0] == v => 2,
            EdgeKind::Semi if self.ends[0] == v => 1,
            EdgeKind::Ordinary if self.ends[0] == v || self.ends[1] == v => 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Multigraph {
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    incident: Vec<Vec<usize>>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_ids == other.vertex_ids && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let v = self.vertex_ids.len();
        self.vertex_index.insert(id.clone(), v);
        self.vertex_ids.push(id);
        self.incident.push(Vec::new());
        Ok(v)
    }

    /// Adds an edge between vertex indices. Loops and semi-edges take `a == b`.
    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        kind: EdgeKind,
        a: usize,
        b: usize,
    ) -> Result<usize> {
        let id = id.into();
        let n = self.vertex_ids.len();
        if a >= n || b >= n {
            return Err(Error::InvalidEdge {
                id,
                reason: "endpoint out of range".into(),
            });
        }
        match kind {
            EdgeKind::Ordinary if a == b => {
                return Err(Error::InvalidEdge {
                    id,
                    reason: "ordinary edge needs two distinct endpoints".into(),
                })
            }
            EdgeKind::Loop | EdgeKind::Semi if a != b => {
                return Err(Error::InvalidEdge {
                    id,
                    reason: format!("{kind} has exactly one endpoint"),
                })
            }
            _ => {}
        }
        if self.edge_index.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        let e = self.edges.len();
        self.edge_index.insert(id.clone(), e);
        self.edges.push(Edge {
            id,
            kind,
            ends: [a, b],
        });
        self.incident[a].push(e);
        if a != b {
            self.incident[b].push(e);
        }
        Ok(e)
    }

    pub fn add_ordinary(&mut self, id: impl Into<String>, a: usize, b: usize) -> Result<usize> {
        self.add_edge(id, EdgeKind::Ordinary, a, b)
    }

    pub fn add_loop(&mut self, id: impl Into<String>, v: usize) -> Result<usize> {
        self.add_edge(id, EdgeKind::Loop, v, v)
    }

    pub fn add_semi(&mut self, id: impl Into<String>, v: usize) -> Result<usize> {
        self.add_edge(id, EdgeKind::Semi, v, v)
    }

    /// Adds an edge addressed by vertex ids.
    pub fn add_edge_by_ids(&mut self, id: &str, kind: EdgeKind, ends: &[&str]) -> Result<usize> {
        let idx: Vec<usize> = ends
            .iter()
            .map(|v| self.vertex(v).ok_or_else(|| Error::UnknownVertex(v.to_string())))
            .collect::<Result<_>>()?;
        match idx.as_slice() {
            [a] => self.add_edge(id, kind, *a, *a),
            [a, b] => self.add_edge(id, kind, *a, *b),
            _ => Err(Error::InvalidEdge {
                id: id.into(),
                reason: "edges have one or two endpoints".into(),
            }),
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    #[inline]
    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn require_edge(&self, id: &str) -> Result<usize> {
        self.edge_by_id(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Edges incident with `v`, each listed once.
    #[inline]
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Ordinary edges count 1, semi-edges 1, loops 2.
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&e| self.edges[e].ends_at(v))
            .sum()
    }

    pub fn degree_of(&self, id: &str) -> Result<usize> {
        Ok(self.degree(self.require_vertex(id)?))
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.count_kind(v, EdgeKind::Loop)
    }

    pub fn semis_at(&self, v: usize) -> usize {
        self.count_kind(v, EdgeKind::Semi)
    }

    fn count_kind(&self, v: usize, kind: EdgeKind) -> usize {
        self.incident[v]
            .iter()
            .filter(|&&e| self.edges[e].kind == kind)
            .count()
    }

    /// Neighbours through ordinary edges, with repetition for parallel edges.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().filter_map(move |&e| {
            let edge = &self.edges[e];
            (edge.kind == EdgeKind::Ordinary).then(|| edge.other(v))
        })
    }

    /// Number of ordinary edges joining `a` and `b`.
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.incident[a]
            .iter()
            .filter(|&&e| {
                let edge = &self.edges[e];
                edge.kind == EdgeKind::Ordinary && edge.other(a) == b
            })
            .count()
    }

    fn has_multi_edge_at(&self, v: usize) -> bool {
        let mut seen: Vec<usize> = self.neighbors(v).collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    pub fn classify(&self, v: usize) -> VertexClass {
        let semi_simple =
            self.loops_at(v) == 0 && self.semis_at(v) <= 1 && !self.has_multi_edge_at(v);
        if !semi_simple {
            VertexClass::Other
        } else if self.semis_at(v) == 0 {
            VertexClass::Simple
        } else {
            VertexClass::SemiSimple
        }
    }

    pub fn classify_vertex(&self, id: &str) -> Result<VertexClass> {
        Ok(self.classify(self.require_vertex(id)?))
    }

    /// No loops, no semi-edges and no parallel edges.
    pub fn is_simple(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.classify(v) == VertexClass::Simple)
    }

    pub fn has_parallel_edges(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.has_multi_edge_at(v))
    }

    pub fn has_loops_or_semis(&self) -> bool {
        self.edges.iter().any(|e| e.kind != EdgeKind::Ordinary)
    }

    /// The common degree, if every vertex has the same one. `None` for the
    /// empty graph.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.vertex_count() == 0 {
            return None;
        }
        let d = self.degree(0);
        (0..self.vertex_count())
            .all(|v| self.degree(v) == d)
            .then_some(d)
    }

    /// Side (0 or 1) of every vertex when the graph is bipartite: no loops,
    /// no semi-edges and no odd cycle. Side 0 holds the first vertex of each
    /// component.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        if self.has_loops_or_semis() {
            return None;
        }
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// The two colour classes, if bipartite.
    pub fn is_bipartite(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let side = self.two_coloring()?;
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.vertex_count()).partition(|&v| side[v] == 0);
        Some((a, b))
    }

    /// Connected components, each sorted; components ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced by `vertices`, keeping ids. Returns the graph and
    /// the new index of each kept vertex (in the given order) and edge.
    pub fn induced(&self, vertices: &[usize]) -> (Multigraph, Vec<usize>, Vec<usize>) {
        let mut keep = vec![usize::MAX; self.vertex_count()];
        let mut g = Multigraph::new();
        for &v in vertices {
            keep[v] = g
                .add_vertex(self.vertex_ids[v].clone())
                .expect("distinct vertices");
        }
        let mut kept_edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            let [a, b] = edge.ends;
            if keep[a] != usize::MAX && keep[b] != usize::MAX {
                g.add_edge(edge.id.clone(), edge.kind, keep[a], keep[b])
                    .expect("valid edge");
                kept_edges.push(e);
            }
        }
        (g, vertices.to_vec(), kept_edges)
    }

    /// Human-readable endpoint ids of an edge.
    pub fn edge_ends_ids(&self, e: usize) -> Vec<&str> {
        let edge = &self.edges[e];
        if edge.kind == EdgeKind::Ordinary {
            vec![self.vertex_id(edge.ends[0]), self.vertex_id(edge.ends[1])]
        } else {
            vec![self.vertex_id(edge.ends[0])]
        }
    }
}

/// Builds graphs with generated ids and supports gluing copies of other
/// graphs onto existing vertices.
#[derive(Debug, Default)]
pub struct Builder {
    graph: Multigraph,
    next_edge: usize,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> usize {
        self.graph.add_vertex(id).expect("builder vertex ids are unique")
    }

    fn fresh_edge_id(&mut self) -> String {
        loop {
            let id = format!("e{}", self.next_edge);
            self.next_edge += 1;
            if self.graph.edge_by_id(&id).is_none() {
                return id;
            }
        }
    }

    pub fn ordinary(&mut self, a: usize, b: usize) -> usize {
        let id = self.fresh_edge_id();
        self.graph.add_ordinary(id, a, b).expect("valid ordinary edge")
    }

    pub fn edge_named(&mut self, id: impl Into<String>, kind: EdgeKind, a: usize, b: usize) -> usize {
        self.graph.add_edge(id, kind, a, b).expect("valid edge")
    }

    /// Copies `part` into the graph. Vertices of `part` listed in `glue`
    /// are not copied; their edges attach to the given existing vertex.
    /// Returns the index of every `part` vertex in the built graph.
    pub fn instantiate(
        &mut self,
        part: &Multigraph,
        prefix: &str,
        glue: &[(usize, usize)],
    ) -> Vec<usize> {
        self.instantiate_skipping(part, prefix, glue, &[])
    }

    /// As [`Builder::instantiate`], leaving out the edges in `skip`.
    pub fn instantiate_skipping(
        &mut self,
        part: &Multigraph,
        prefix: &str,
        glue: &[(usize, usize)],
        skip: &[usize],
    ) -> Vec<usize> {
        let mut map = vec![usize::MAX; part.vertex_count()];
        for &(p, target) in glue {
            map[p] = target;
        }
        for v in 0..part.vertex_count() {
            if map[v] == usize::MAX {
                map[v] = self.vertex(format!("{prefix}{}", part.vertex_id(v)));
            }
        }
        for (e, edge) in part.edges().iter().enumerate() {
            if skip.contains(&e) {
                continue;
            }
            let id = format!("{prefix}{}", edge.id);
            self.graph
                .add_edge(id, edge.kind, map[edge.ends[0]], map[edge.ends[1]])
                .expect("glued copy stays well-formed");
        }
        map
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn finish(self) -> Multigraph {
        self.graph
    }
}
