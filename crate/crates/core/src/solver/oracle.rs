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

//! Naive reference search used to cross-check the main solver.
//!
//! Vertices are assigned in index order, then edges in index order. The only
//! pruning is incidence (an edge image must join the images of its ends) and
//! edge-end capacity at each source vertex. Complete maps go through the
//! verifier. Shares no code with the main engine.

use std::time::Instant;

use super::{SolveOutcome, Stats, Status};
use crate::covering::{respects_lists, verify, CoverMap, ListAssignment, Mode};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};

/// Size guard: the oracle refuses when
/// `|V(G)|·log10|V(H)| + |Λ(G)|·log10|Λ(H)|` exceeds `max_log10`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleLimits {
    pub max_log10: f64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_log10: 24.0 }
    }
}

fn search_space_log10(g: &Multigraph, h: &Multigraph) -> f64 {
    let lg = |n: usize| if n <= 1 { 0.0 } else { (n as f64).log10() };
    g.vertex_count() as f64 * lg(h.vertex_count()) + g.edge_count() as f64 * lg(h.edge_count())
}

/// Decides List-H-Cover by exhaustive search.
pub fn oracle(g: &Multigraph, h: &Multigraph, lists: &ListAssignment) -> Result<SolveOutcome> {
    oracle_with(g, h, lists, Mode::Total, OracleLimits::default())
}

pub fn oracle_with(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    mode: Mode,
    limits: OracleLimits,
) -> Result<SolveOutcome> {
    let mut first = None;
    let (_, stats) = run(g, h, lists, mode, limits, &mut |f| {
        first = Some(f.clone());
        false
    })?;
    let status = match first {
        Some(f) => Status::Satisfiable(f),
        None => Status::Unsatisfiable,
    };
    Ok(SolveOutcome { status, stats })
}

/// Every (partial) cover respecting the lists, in the oracle's own order.
pub fn oracle_all(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    mode: Mode,
    limits: OracleLimits,
) -> Result<Vec<CoverMap>> {
    let mut out = Vec::new();
    run(g, h, lists, mode, limits, &mut |f| {
        out.push(f.clone());
        true
    })?;
    Ok(out)
}

struct Search<'a> {
    g: &'a Multigraph,
    h: &'a Multigraph,
    lists: &'a ListAssignment,
    mode: Mode,
    f: CoverMap,
    /// `used[v][t]`: edge-ends at source vertex `v` already sent to `t`.
    used: Vec<Vec<usize>>,
    nodes: u64,
}

fn run(
    g: &Multigraph,
    h: &Multigraph,
    lists: &ListAssignment,
    mode: Mode,
    limits: OracleLimits,
    emit: &mut dyn FnMut(&CoverMap) -> bool,
) -> Result<(bool, Stats)> {
    let size = search_space_log10(g, h);
    if size > limits.max_log10 {
        return Err(Error::TooLarge(format!(
            "oracle search space is about 10^{size:.1}; the limit is 10^{}",
            limits.max_log10
        )));
    }
    lists.validate(g, h)?;
    let start = Instant::now();
    let mut s = Search {
        g,
        h,
        lists,
        mode,
        f: CoverMap {
            vmap: vec![usize::MAX; g.vertex_count()],
            emap: vec![usize::MAX; g.edge_count()],
        },
        used: vec![vec![0; h.edge_count()]; g.vertex_count()],
        nodes: 0,
    };
    let stopped = !s.vertices(0, emit);
    Ok((
        stopped,
        Stats {
            nodes: s.nodes,
            backtracks: 0,
            revisions: 0,
            elapsed: start.elapsed(),
        },
    ))
}

impl Search<'_> {
    /// Whether target edge `t` can carry source edge `e` under the current
    /// vertex images.
    fn incidence_ok(&self, e: usize, t: usize) -> bool {
        let (ge, he) = (self.g.edge(e), self.h.edge(t));
        let a = self.f.vmap[ge.ends[0]];
        let b = self.f.vmap[ge.ends[1]];
        match (ge.kind, he.kind) {
            (EdgeKind::Loop, EdgeKind::Loop) | (EdgeKind::Semi, EdgeKind::Semi) => a == he.ends[0],
            (EdgeKind::Ordinary, EdgeKind::Ordinary) => {
                (a == he.ends[0] && b == he.ends[1]) || (a == he.ends[1] && b == he.ends[0])
            }
            (EdgeKind::Ordinary, EdgeKind::Loop | EdgeKind::Semi) => a == b && a == he.ends[0],
            _ => false,
        }
    }

    fn edge_possible(&self, e: usize) -> bool {
        (0..self.h.edge_count()).any(|t| self.lists.allows_edge(e, t) && self.incidence_ok(e, t))
    }

    /// Returns false when the consumer asked to stop.
    fn vertices(&mut self, v: usize, emit: &mut dyn FnMut(&CoverMap) -> bool) -> bool {
        if v == self.g.vertex_count() {
            return self.edges(0, emit);
        }
        for x in 0..self.h.vertex_count() {
            if !self.lists.allows_vertex(v, x) {
                continue;
            }
            self.nodes += 1;
            self.f.vmap[v] = x;
            let ok = self.g.incident(v).iter().all(|&e| {
                let [a, b] = self.g.edge(e).ends;
                a.max(b) > v || self.edge_possible(e)
            });
            if ok && !self.vertices(v + 1, emit) {
                self.f.vmap[v] = usize::MAX;
                return false;
            }
        }
        self.f.vmap[v] = usize::MAX;
        true
    }

    fn capacity(&self, t: usize) -> usize {
        if self.h.edge(t).kind == EdgeKind::Loop {
            2
        } else {
            1
        }
    }

    fn edges(&mut self, e: usize, emit: &mut dyn FnMut(&CoverMap) -> bool) -> bool {
        if e == self.g.edge_count() {
            let ok = verify(self.g, self.h, &self.f, self.mode).is_ok()
                && respects_lists(&self.f, self.lists);
            return !ok || emit(&self.f);
        }
        for t in 0..self.h.edge_count() {
            if !self.lists.allows_edge(e, t) || !self.incidence_ok(e, t) {
                continue;
            }
            self.nodes += 1;
            self.f.emap[e] = t;
            self.add(e, t, true);
            let [a, b] = self.g.edge(e).ends;
            let within = self.used[a][t] <= self.capacity(t) && self.used[b][t] <= self.capacity(t);
            if within && !self.edges(e + 1, emit) {
                self.add(e, t, false);
                self.f.emap[e] = usize::MAX;
                return false;
            }
            self.add(e, t, false);
        }
        self.f.emap[e] = usize::MAX;
        true
    }

    /// Books (or releases) the edge-ends of `e` at its source vertices.
    fn add(&mut self, e: usize, t: usize, book: bool) {
        let ge = self.g.edge(e);
        let ends: &[usize] = match ge.kind {
            EdgeKind::Semi => &ge.ends[..1],
            _ => &ge.ends[..],
        };
        for &v in ends {
            if book {
                self.used[v][t] += 1;
            } else {
                self.used[v][t] -= 1;
            }
        }
    }
}
