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

//! List cover of `S × K_2` through list cover of `S`.

use std::time::Instant;

use crate::constructions::times_k2;
use crate::covering::{verify_list_cover, CoverMap, ListAssignment, Mode};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};
use crate::solver::{SolveOutcome, Stats, Status};

/// Decides List-`(s × K_2)`-Cover for `g`, with `lists` over the vertices
/// and edges of [`times_k2`]`(s)`. A bipartite `g` must send one colour
/// class to the `b` side and the other to the `w` side; for each component
/// both choices are projected to lists over `s` and handed to `solve_s`.
/// Non-bipartite `g` is rejected without a call. Edge lists must be unions
/// of edge fibres `{e.0, e.1}`.
pub fn lift_via_k2(
    g: &Multigraph,
    lists: &ListAssignment,
    s: &Multigraph,
    solve_s: &mut dyn FnMut(&Multigraph, &ListAssignment) -> Result<SolveOutcome>,
) -> Result<SolveOutcome> {
    let start = Instant::now();
    let r = times_k2(s);
    lists.validate(g, &r)?;
    let mut fibre: Vec<Vec<usize>> = Vec::with_capacity(s.edge_count());
    let mut owner = Vec::with_capacity(r.edge_count());
    for (e, edge) in s.edges().iter().enumerate() {
        let n = if edge.kind == EdgeKind::Semi { 1 } else { 2 };
        fibre.push((owner.len()..owner.len() + n).collect());
        owner.extend(std::iter::repeat_n(e, n));
    }
    for (&e, list) in &lists.edges {
        for &f in list {
            if !fibre[owner[f]].iter().all(|x| list.contains(x)) {
                return Err(Error::Precondition(format!(
                    "list of edge `{}` splits the fibre of `{}`",
                    g.edge(e).id,
                    s.edge(owner[f]).id
                )));
            }
        }
    }
    let mut stats = Stats::default();
    let finish = |status: Status, mut stats: Stats| {
        stats.elapsed = start.elapsed();
        Ok(SolveOutcome { status, stats })
    };
    let Some(colour) = g.two_coloring() else {
        return finish(Status::Unsatisfiable, stats);
    };

    let mut vmap = vec![0; g.vertex_count()];
    let mut emap = vec![0; g.edge_count()];
    let mut limited = false;
    for comp in g.components() {
        let (sub, verts, edges) = g.induced(&comp);
        let mut found = None;
        let mut comp_limited = false;
        for flip in [0u8, 1] {
            let white = |i: usize| colour[verts[i]] ^ flip == 1;
            let mut projected = ListAssignment::full();
            for (i, &v) in verts.iter().enumerate() {
                if let Some(list) = lists.vertices.get(&v) {
                    let side = usize::from(white(i));
                    projected.restrict_vertex(i, list.iter().filter(|&&x| x % 2 == side).map(|&x| x / 2));
                }
            }
            for (i, &e) in edges.iter().enumerate() {
                if let Some(list) = lists.edges.get(&e) {
                    projected.restrict_edge(i, list.iter().map(|&f| owner[f]));
                }
            }
            let out = solve_s(&sub, &projected)?;
            stats.nodes += out.stats.nodes;
            stats.backtracks += out.stats.backtracks;
            stats.revisions += out.stats.revisions;
            match out.status {
                Status::Satisfiable(f) => {
                    found = Some((f, flip));
                    break;
                }
                Status::ResourceLimit => comp_limited = true,
                Status::Unsatisfiable => {}
            }
        }
        let Some((f, flip)) = found else {
            if comp_limited {
                limited = true;
                continue;
            }
            return finish(Status::Unsatisfiable, stats);
        };
        let lifted = lift_component(&sub, s, &fibre, &f, |i| colour[verts[i]] ^ flip == 1)?;
        for (i, &v) in verts.iter().enumerate() {
            vmap[v] = lifted.vmap[i];
        }
        for (i, &e) in edges.iter().enumerate() {
            emap[e] = lifted.emap[i];
        }
    }
    if limited {
        return finish(Status::ResourceLimit, stats);
    }
    let cover = CoverMap { vmap, emap };
    if let Err(v) = verify_list_cover(g, &r, &cover, lists, Mode::Total) {
        return Err(Error::Certificate(format!("lifted map is not a cover: {v}")));
    }
    finish(Status::Satisfiable(cover), stats)
}

/// Lifts a cover `f: sub → s` to `sub → s × K_2` given the side of every
/// vertex.
fn lift_component(
    sub: &Multigraph,
    s: &Multigraph,
    fibre: &[Vec<usize>],
    f: &CoverMap,
    white: impl Fn(usize) -> bool,
) -> Result<CoverMap> {
    let vmap: Vec<usize> = (0..sub.vertex_count())
        .map(|v| 2 * f.vmap[v] + usize::from(white(v)))
        .collect();
    let mut emap = vec![usize::MAX; sub.edge_count()];
    let r = times_k2(s);
    for (e, edge) in sub.edges().iter().enumerate() {
        let target = f.emap[e];
        match s.edge(target).kind {
            EdgeKind::Ordinary => {
                let [a, b] = edge.ends.map(|v| vmap[v]);
                emap[e] = *fibre[target]
                    .iter()
                    .find(|&&c| {
                        let [x, y] = r.edge(c).ends;
                        (x, y) == (a, b) || (x, y) == (b, a)
                    })
                    .ok_or_else(|| Error::Certificate("edge ends on one side".into()))?;
            }
            EdgeKind::Semi => emap[e] = fibre[target][0],
            EdgeKind::Loop => {}
        }
    }
    // Preimages of a loop form even cycles; alternate its two lifts.
    for e in 0..sub.edge_count() {
        if emap[e] != usize::MAX {
            continue;
        }
        let target = f.emap[e];
        let (mut cur, mut at, mut pick) = (e, sub.edge(e).ends[0], 0);
        while emap[cur] == usize::MAX {
            emap[cur] = fibre[target][pick];
            pick ^= 1;
            at = sub.edge(cur).other(at);
            match sub
                .incident(at)
                .iter()
                .find(|&&n| n != cur && f.emap[n] == target && emap[n] == usize::MAX)
            {
                Some(&n) => cur = n,
                None => break,
            }
        }
    }
    Ok(CoverMap { vmap, emap })
}
