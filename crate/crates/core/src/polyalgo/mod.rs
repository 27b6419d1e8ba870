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

//! Polynomial-time deciders for the tractable targets.
//!
//! * 1-regular targets: the one-vertex graph with a semi-edge and `K2`.
//! * 2-regular targets: a vertex with a loop, a vertex with two semi-edges,
//!   cycles `C_t` and open paths `P_t`. Every component of the input must be
//!   a cycle or an open path; the covers are periodic walks, so a handful
//!   of candidate maps per component is checked against the lists.
//! * The cubic one-vertex target with a loop and a semi-edge: preprocessing
//!   rules, an auxiliary graph and a perfect matching.
//! * The triple edge without lists: the input must be cubic and bipartite,
//!   and the witness comes from splitting it into perfect matchings.
//!
//! Each decider reports the number of candidate maps (or work steps) it
//! examined in `stats.nodes`.

pub mod matching;

use std::time::Instant;

use serde::Serialize;

use crate::constructions::proper_edge_coloring;
use crate::covering::{verify_list_cover, CoverMap, ListAssignment, Mode};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};
use crate::solver::{SolveOutcome, Stats, Status};

pub use matching::{maximum_matching, Matching};

/// Which polynomial decider applies to a target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PolyCase {
    /// `F(1,0)` or `K2`.
    #[serde(rename = "F10_or_K2")]
    F10OrK2,
    /// One vertex with a loop.
    #[serde(rename = "F01_loop")]
    F01Loop,
    /// One vertex with two semi-edges.
    #[serde(rename = "F20_two_semis")]
    F20TwoSemis,
    #[serde(rename = "cycle_target")]
    CycleTarget,
    #[serde(rename = "open_path_target")]
    OpenPathTarget,
    /// One vertex with a loop and a semi-edge.
    #[serde(rename = "loop_plus_semi")]
    LoopPlusSemi,
    #[serde(rename = "none")]
    None,
}

impl PolyCase {
    pub fn as_str(self) -> &'static str {
        match self {
            PolyCase::F10OrK2 => "F10_or_K2",
            PolyCase::F01Loop => "F01_loop",
            PolyCase::F20TwoSemis => "F20_two_semis",
            PolyCase::CycleTarget => "cycle_target",
            PolyCase::OpenPathTarget => "open_path_target",
            PolyCase::LoopPlusSemi => "loop_plus_semi",
            PolyCase::None => "none",
        }
    }

    fn is_two_regular(self) -> bool {
        matches!(
            self,
            PolyCase::F01Loop | PolyCase::F20TwoSemis | PolyCase::CycleTarget | PolyCase::OpenPathTarget
        )
    }
}

impl std::fmt::Display for PolyCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies a connected target.
pub fn dispatch(h: &Multigraph) -> Result<PolyCase> {
    if h.vertex_count() == 0 {
        return Err(Error::Precondition("the target graph is empty".into()));
    }
    if !h.is_connected() {
        return Err(Error::Precondition("the target graph is not connected".into()));
    }
    let one = h.vertex_count() == 1;
    let (loops, semis) = (h.loops_at(0), h.semis_at(0));
    Ok(match h.regular_degree() {
        Some(1) if one || h.vertex_count() == 2 => PolyCase::F10OrK2,
        Some(2) if one && loops == 1 => PolyCase::F01Loop,
        Some(2) if one && semis == 2 => PolyCase::F20TwoSemis,
        Some(2) => match walk(h, &(0..h.vertex_count()).collect::<Vec<_>>()) {
            Some(Walk::Cycle { .. }) => PolyCase::CycleTarget,
            Some(Walk::OpenPath { .. }) => PolyCase::OpenPathTarget,
            None => PolyCase::None,
        },
        Some(3) if one && loops == 1 && semis == 1 => PolyCase::LoopPlusSemi,
        _ => PolyCase::None,
    })
}

/// A connected 2-regular graph read as a closed or open walk.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Walk {
    /// `u1 a1 u2 a2 .. un an`, `an` returning to `u1`.
    Cycle { vertices: Vec<usize>, edges: Vec<usize> },
    /// `a0 u1 a1 .. un an` with semi-edges `a0` and `an`.
    OpenPath { first: usize, vertices: Vec<usize>, edges: Vec<usize> },
}

/// Reads the component `comp` as a cycle or an open path, starting from its
/// smallest vertex (for paths: the smallest vertex carrying a semi-edge).
fn walk(g: &Multigraph, comp: &[usize]) -> Option<Walk> {
    if comp.iter().any(|&v| g.degree(v) != 2) {
        return None;
    }
    let semi_at = |v: usize| g.incident(v).iter().copied().find(|&e| g.edge(e).kind == EdgeKind::Semi);
    let start_semi = comp.iter().find_map(|&v| semi_at(v).map(|e| (v, e)));
    let (start, mut prev, first) = match start_semi {
        Some((v, e)) => (v, e, Some(e)),
        None => {
            let v = *comp.iter().min()?;
            (v, usize::MAX, None)
        }
    };
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    let mut v = start;
    loop {
        // The edge leaving `v` other than the one we arrived by.
        let inc = g.incident(v);
        let next = if prev == usize::MAX {
            inc[0]
        } else {
            let pos = inc.iter().position(|&e| e == prev)?;
            // A loop is listed once at its vertex.
            if inc.len() == 1 {
                inc[0]
            } else {
                inc[1 - pos]
            }
        };
        edges.push(next);
        let edge = g.edge(next);
        match edge.kind {
            EdgeKind::Semi => {
                first?;
                break;
            }
            EdgeKind::Loop => {
                // Only a lone vertex with a loop is 2-regular with a loop.
                break;
            }
            EdgeKind::Ordinary => {
                let w = edge.other(v);
                if w == start && first.is_none() {
                    break;
                }
                vertices.push(w);
                v = w;
                prev = next;
            }
        }
    }
    if vertices.len() != comp.len() {
        return None;
    }
    Some(match first {
        Some(first) => Walk::OpenPath { first, vertices, edges },
        None => Walk::Cycle { vertices, edges },
    })
}

/// Periodic target walk: entry `i` is a vertex and the edge leaving it.
type Pattern = Vec<(usize, usize)>;

/// The candidate walks of a 2-regular target and the period of the walks
/// on source cycles.
struct TargetWalks {
    /// Closed walks; source cycles follow one of these at some shift.
    patterns: Vec<Pattern>,
    /// Source open paths follow `patterns[0]` from these shifts; empty when
    /// the target has no semi-edges.
    path_shifts: Vec<usize>,
    /// Source open paths need a multiple of this many vertices.
    path_period: usize,
}

fn target_walks(h: &Multigraph, case: PolyCase) -> TargetWalks {
    let all: Vec<usize> = (0..h.vertex_count()).collect();
    match walk(h, &all).expect("dispatch checked the target") {
        Walk::Cycle { vertices, edges } => {
            let t = vertices.len();
            let forward: Pattern = vertices.iter().copied().zip(edges.iter().copied()).collect();
            let mut patterns = vec![forward];
            if case == PolyCase::CycleTarget {
                let backward: Pattern =
                    (0..t).map(|j| (vertices[(t - j) % t], edges[(2 * t - j - 1) % t])).collect();
                patterns.push(backward);
            }
            TargetWalks {
                patterns,
                path_shifts: Vec::new(),
                path_period: 0,
            }
        }
        Walk::OpenPath { first, vertices, edges } => {
            // Bounce at the semi-edges: x1 e1 .. xt et, xt e(t-1) .. x1 e0.
            let t = vertices.len();
            let mut bounce: Pattern = vertices.iter().copied().zip(edges.iter().copied()).collect();
            for i in (0..t).rev() {
                let back = if i == 0 { first } else { edges[i - 1] };
                bounce.push((vertices[i], back));
            }
            TargetWalks {
                patterns: vec![bounce],
                path_shifts: vec![0, t],
                path_period: t,
            }
        }
    }
}

fn outcome(status: Status, nodes: u64, start: Instant) -> SolveOutcome {
    SolveOutcome {
        status,
        stats: Stats {
            nodes,
            backtracks: 0,
            revisions: 0,
            elapsed: start.elapsed(),
        },
    }
}

fn assert_witness(g: &Multigraph, h: &Multigraph, f: &CoverMap, lists: &ListAssignment) {
    if let Err(v) = verify_list_cover(g, h, f, lists, Mode::Total) {
        panic!("polynomial decider produced an invalid map: {v}");
    }
}

/// Decides List-H-Cover for a 2-regular target.
pub fn decide_2regular(h: &Multigraph, g: &Multigraph, lists: &ListAssignment) -> Result<SolveOutcome> {
    let case = dispatch(h)?;
    if !case.is_two_regular() {
        return Err(Error::Precondition(format!(
            "the target is {case}, not a 2-regular polynomial case"
        )));
    }
    lists.validate(g, h)?;
    let start = Instant::now();
    let walks = target_walks(h, case);
    let period = walks.patterns[0].len();
    let mut f = CoverMap {
        vmap: vec![0; g.vertex_count()],
        emap: vec![0; g.edge_count()],
    };
    let mut checked = 0u64;
    let fits = |v: usize, x: usize, e: usize, t: usize| lists.allows_vertex(v, x) && lists.allows_edge(e, t);
    for comp in g.components() {
        let found = match walk(g, &comp) {
            Some(Walk::Cycle { vertices, edges }) => {
                let n = vertices.len();
                // A source loop can only follow a target loop.
                let loop_ok = n > 1 || h.edge(walks.patterns[0][0].1).kind == EdgeKind::Loop;
                if n % period != 0 || !loop_ok {
                    None
                } else {
                    let mut hit = None;
                    // Every candidate is checked; the first that fits is kept.
                    for pattern in &walks.patterns {
                        for s in 0..period {
                            checked += 1;
                            let ok = (0..n).all(|i| {
                                let (x, t) = pattern[(s + i) % period];
                                fits(vertices[i], x, edges[i], t)
                            });
                            if ok && hit.is_none() {
                                hit = Some((pattern, s));
                            }
                        }
                    }
                    hit.map(|(pattern, s)| {
                        for i in 0..n {
                            let (x, t) = pattern[(s + i) % period];
                            f.vmap[vertices[i]] = x;
                            f.emap[edges[i]] = t;
                        }
                    })
                }
            }
            Some(Walk::OpenPath { first, vertices, edges }) => {
                let n = vertices.len();
                if walks.path_shifts.is_empty() || n % walks.path_period != 0 {
                    None
                } else {
                    let pattern = &walks.patterns[0];
                    let mut hit = None;
                    for &s in &walks.path_shifts {
                        checked += 1;
                        let entry = pattern[(s + period - 1) % period].1;
                        let ok = lists.allows_edge(first, entry)
                            && (0..n).all(|i| {
                                let (x, t) = pattern[(s + i) % period];
                                fits(vertices[i], x, edges[i], t)
                            });
                        if ok && hit.is_none() {
                            hit = Some((s, entry));
                        }
                    }
                    hit.map(|(s, entry)| {
                        f.emap[first] = entry;
                        for i in 0..n {
                            let (x, t) = pattern[(s + i) % period];
                            f.vmap[vertices[i]] = x;
                            f.emap[edges[i]] = t;
                        }
                    })
                }
            }
            None => None,
        };
        if found.is_none() {
            return Ok(outcome(Status::Unsatisfiable, checked, start));
        }
    }
    assert_witness(g, h, &f, lists);
    Ok(outcome(Status::Satisfiable(f), checked, start))
}

/// Decides List-H-Cover for `F(1,0)` and `K2`.
pub fn decide_1regular(h: &Multigraph, g: &Multigraph, lists: &ListAssignment) -> Result<SolveOutcome> {
    if dispatch(h)? != PolyCase::F10OrK2 {
        return Err(Error::Precondition("the target is not 1-regular".into()));
    }
    lists.validate(g, h)?;
    let start = Instant::now();
    let mut f = CoverMap {
        vmap: vec![0; g.vertex_count()],
        emap: vec![0; g.edge_count()],
    };
    let mut checked = 0u64;
    // Candidate images for a source edge: a semi-edge source needs a
    // semi-edge target and so on; `K2` has one edge, `F(1,0)` one semi-edge.
    let target_edge = 0;
    let semi_target = h.edge(target_edge).kind == EdgeKind::Semi;
    for comp in g.components() {
        #[allow(clippy::match_ref_pats)]
        let ok = match comp.as_slice() {
            &[v] if g.degree(v) == 1 && g.semis_at(v) == 1 && semi_target => {
                checked += 1;
                let e = g.incident(v)[0];
                f.vmap[v] = 0;
                f.emap[e] = target_edge;
                lists.allows_vertex(v, 0) && lists.allows_edge(e, target_edge)
            }
            &[a, b] if g.degree(a) == 1 && g.degree(b) == 1 && g.multiplicity(a, b) == 1 => {
                let e = g.incident(a)[0];
                // `F(1,0)`: both ends on x. `K2`: both orientations.
                let images: &[(usize, usize)] = if semi_target { &[(0, 0)] } else { &[(0, 1), (1, 0)] };
                let mut hit = false;
                for &(x, y) in images {
                    checked += 1;
                    if lists.allows_vertex(a, x) && lists.allows_vertex(b, y) && lists.allows_edge(e, target_edge) {
                        f.vmap[a] = x;
                        f.vmap[b] = y;
                        f.emap[e] = target_edge;
                        hit = true;
                        break;
                    }
                }
                hit
            }
            _ => false,
        };
        if !ok {
            return Ok(outcome(Status::Unsatisfiable, checked, start));
        }
    }
    assert_witness(g, h, &f, lists);
    Ok(outcome(Status::Satisfiable(f), checked, start))
}

/// The three reduction steps building the auxiliary graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// Delete vertices incident to a semi-edge, with their edges.
    DeleteSemiVertices,
    /// Remove edges whose list lacks the semi-edge.
    RemoveNonSemiEdges,
    /// Keep an edge whose list lacks the loop, remove its neighbours.
    IsolateNonLoopEdges,
}

pub const DEFAULT_ORDER: [Step; 3] = [
    Step::DeleteSemiVertices,
    Step::RemoveNonSemiEdges,
    Step::IsolateNonLoopEdges,
];

/// Why an instance was rejected by preprocessing, if it was.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rejection {
    /// A vertex or edge with an empty list.
    EmptyList,
    /// A vertex with two or more semi-edges.
    TwoSemis,
    /// A semi-edge whose list lacks the semi-edge.
    SemiWithoutSemi,
    /// A vertex with a semi-edge and an edge whose list lacks the loop.
    SemiAndNonLoop,
    /// A vertex with two ordinary edges whose lists lack the loop.
    TwoNonLoop,
    /// A loop whose list lacks the loop.
    LoopWithoutLoop,
    /// A vertex of degree other than 3.
    NotCubic,
    /// The auxiliary graph has no perfect matching.
    NoPerfectMatching,
}

/// Result of the loop-plus-semi-edge decider with its certificate parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSemiReport {
    pub outcome: SolveOutcome,
    pub rejection: Option<Rejection>,
    /// Edges of the auxiliary graph (source edge indices) and its vertices.
    pub auxiliary_edges: Vec<usize>,
    pub auxiliary_vertices: Vec<usize>,
    pub matching: Option<Vec<usize>>,
}

/// Decides List-H-Cover for the one-vertex target with one loop and one
/// semi-edge.
pub fn decide_loop_semi(h: &Multigraph, g: &Multigraph, lists: &ListAssignment) -> Result<SolveOutcome> {
    Ok(decide_loop_semi_with(h, g, lists, &DEFAULT_ORDER)?.outcome)
}

/// As [`decide_loop_semi`], applying the reduction steps in `order` until
/// nothing changes.
pub fn decide_loop_semi_with(
    h: &Multigraph,
    g: &Multigraph,
    lists: &ListAssignment,
    order: &[Step],
) -> Result<LoopSemiReport> {
    if dispatch(h)? != PolyCase::LoopPlusSemi {
        return Err(Error::Precondition(
            "the target is not one vertex with a loop and a semi-edge".into(),
        ));
    }
    lists.validate(g, h)?;
    let start = Instant::now();
    let semi = (0..h.edge_count()).find(|&t| h.edge(t).kind == EdgeKind::Semi).expect("one semi-edge");
    let lp = 1 - semi;
    let mut work = 0u64;
    let reject = |why: Rejection, work: u64, aux_e: Vec<usize>, aux_v: Vec<usize>| LoopSemiReport {
        outcome: outcome(Status::Unsatisfiable, work, start),
        rejection: Some(why),
        auxiliary_edges: aux_e,
        auxiliary_vertices: aux_v,
        matching: None,
    };
    let has_s = |e: usize| lists.allows_edge(e, semi);
    let has_l = |e: usize| lists.allows_edge(e, lp);

    // (a)
    if lists.vertices.values().any(|l| l.is_empty()) || lists.edges.values().any(|l| l.is_empty()) {
        return Ok(reject(Rejection::EmptyList, work, vec![], vec![]));
    }
    if (0..g.vertex_count()).any(|v| g.degree(v) != 3) {
        return Ok(reject(Rejection::NotCubic, work, vec![], vec![]));
    }
    for v in 0..g.vertex_count() {
        work += 1;
        let inc = g.incident(v);
        let semis: Vec<usize> = inc.iter().copied().filter(|&e| g.edge(e).kind == EdgeKind::Semi).collect();
        // (b)
        if semis.len() >= 2 {
            return Ok(reject(Rejection::TwoSemis, work, vec![], vec![]));
        }
        // (c)
        if semis.iter().any(|&e| !has_s(e)) {
            return Ok(reject(Rejection::SemiWithoutSemi, work, vec![], vec![]));
        }
        // (d)
        if !semis.is_empty() && inc.iter().any(|&e| g.edge(e).kind != EdgeKind::Semi && !has_l(e)) {
            return Ok(reject(Rejection::SemiAndNonLoop, work, vec![], vec![]));
        }
        // (e)
        let non_loop = inc
            .iter()
            .filter(|&&e| g.edge(e).kind == EdgeKind::Ordinary && !has_l(e))
            .count();
        if non_loop >= 2 {
            return Ok(reject(Rejection::TwoNonLoop, work, vec![], vec![]));
        }
    }
    // (f)
    if g.edges().iter().enumerate().any(|(e, edge)| edge.kind == EdgeKind::Loop && !has_l(e)) {
        return Ok(reject(Rejection::LoopWithoutLoop, work, vec![], vec![]));
    }

    // The auxiliary graph. Loops and semi-edges never join a matching, so
    // it starts from the ordinary edges.
    let mut alive_v = vec![true; g.vertex_count()];
    let mut alive_e: Vec<bool> = g.edges().iter().map(|e| e.kind == EdgeKind::Ordinary).collect();
    loop {
        let mut changed = false;
        for step in order {
            match step {
                Step::DeleteSemiVertices => {
                    for v in 0..g.vertex_count() {
                        work += 1;
                        if alive_v[v] && g.semis_at(v) > 0 {
                            alive_v[v] = false;
                            changed = true;
                            for &e in g.incident(v) {
                                if alive_e[e] {
                                    alive_e[e] = false;
                                }
                            }
                        }
                    }
                }
                Step::RemoveNonSemiEdges => {
                    for e in 0..g.edge_count() {
                        work += 1;
                        if alive_e[e] && !has_s(e) {
                            alive_e[e] = false;
                            changed = true;
                        }
                    }
                }
                Step::IsolateNonLoopEdges => {
                    for e in 0..g.edge_count() {
                        work += 1;
                        if !alive_e[e] || has_l(e) {
                            continue;
                        }
                        for &end in &g.edge(e).ends {
                            for &f in g.incident(end) {
                                if f != e && alive_e[f] {
                                    alive_e[f] = false;
                                    changed = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let aux_vertices: Vec<usize> = (0..g.vertex_count()).filter(|&v| alive_v[v]).collect();
    let aux_edges: Vec<usize> = (0..g.edge_count()).filter(|&e| alive_e[e]).collect();
    let mut aux = Multigraph::new();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for &v in &aux_vertices {
        index[v] = aux.add_vertex(g.vertex_id(v)).expect("distinct ids");
    }
    for &e in &aux_edges {
        let [a, b] = g.edge(e).ends;
        aux.add_ordinary(g.edge(e).id.clone(), index[a], index[b]).expect("alive ends");
    }
    let m = maximum_matching(&aux);
    work += (aux.vertex_count() * aux.vertex_count()) as u64;
    if !m.perfect {
        return Ok(reject(Rejection::NoPerfectMatching, work, aux_edges, aux_vertices));
    }
    let matched: Vec<usize> = m.edges.iter().map(|&i| aux_edges[i]).collect();
    let mut emap = vec![lp; g.edge_count()];
    for &e in &matched {
        emap[e] = semi;
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.kind == EdgeKind::Semi {
            emap[e] = semi;
        }
    }
    let f = CoverMap {
        vmap: vec![0; g.vertex_count()],
        emap,
    };
    assert_witness(g, h, &f, lists);
    Ok(LoopSemiReport {
        outcome: outcome(Status::Satisfiable(f), work, start),
        rejection: None,
        auxiliary_edges: aux_edges,
        auxiliary_vertices: aux_vertices,
        matching: Some(matched),
    })
}

/// Decides Cover for the triple edge with full lists. `Ok(None)` for other
/// targets or restricted lists.
pub fn decide_triple_edge(
    h: &Multigraph,
    g: &Multigraph,
    lists: &ListAssignment,
) -> Result<Option<SolveOutcome>> {
    let is_triple = h.vertex_count() == 2
        && h.edge_count() == 3
        && h.edges().iter().all(|e| e.kind == EdgeKind::Ordinary);
    if !is_triple || !lists.is_full() {
        return Ok(None);
    }
    let start = Instant::now();
    let side = match g.two_coloring() {
        Some(side) if (0..g.vertex_count()).all(|v| g.degree(v) == 3) => side,
        _ => return Ok(Some(outcome(Status::Unsatisfiable, 1, start))),
    };
    let coloring = proper_edge_coloring(g, 3)?;
    let at = h.incident(0);
    let f = CoverMap {
        vmap: side.iter().map(|&s| usize::from(s)).collect(),
        emap: coloring.colors.iter().map(|&c| at[c]).collect(),
    };
    assert_witness(g, h, &f, lists);
    Ok(Some(outcome(Status::Satisfiable(f), 1, start)))
}

/// Runs the decider selected by [`dispatch`], or the triple-edge fast path;
/// `Ok(None)` when neither applies.
pub fn decide(h: &Multigraph, g: &Multigraph, lists: &ListAssignment) -> Result<Option<SolveOutcome>> {
    Ok(match dispatch(h)? {
        PolyCase::F10OrK2 => Some(decide_1regular(h, g, lists)?),
        PolyCase::LoopPlusSemi => Some(decide_loop_semi(h, g, lists)?),
        PolyCase::None => decide_triple_edge(h, g, lists)?,
        _ => Some(decide_2regular(h, g, lists)?),
    })
}

#[cfg(test)]
mod tests;
