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

//! Proper edge colourings of regular multigraphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Multigraph};
use crate::polyalgo::matching::maximum_matching;

/// Colour of every edge, `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    pub colors: Vec<usize>,
    pub k: usize,
}

impl EdgeColoring {
    /// Edges sharing a vertex get distinct colours, all below `k`.
    pub fn is_proper(&self, g: &Multigraph) -> bool {
        if self.colors.len() != g.edge_count() || self.colors.iter().any(|&c| c >= self.k) {
            return false;
        }
        (0..g.vertex_count()).all(|v| {
            let mut seen = vec![false; self.k];
            g.incident(v).iter().all(|&e| {
                let c = self.colors[e];
                !std::mem::replace(&mut seen[c], true)
            })
        })
    }

    /// Edges of colour `c`, ascending.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == c).collect()
    }

    /// The edge of colour `c` at `v`.
    pub fn edge_at(&self, g: &Multigraph, v: usize, c: usize) -> Option<usize> {
        g.incident(v).iter().copied().find(|&e| self.colors[e] == c)
    }

    /// Renames colour `c` to `perm[c]`.
    pub fn permuted(&self, perm: &[usize]) -> EdgeColoring {
        EdgeColoring {
            colors: self.colors.iter().map(|&c| perm[c]).collect(),
            k: self.k,
        }
    }
}

fn check_regular(g: &Multigraph, k: usize) -> Result<()> {
    if g.edges().iter().any(|e| e.kind != EdgeKind::Ordinary) {
        return Err(Error::Precondition("edge colouring needs ordinary edges only".into()));
    }
    if (0..g.vertex_count()).any(|v| g.degree(v) != k) {
        return Err(Error::Precondition(format!("graph is not {k}-regular")));
    }
    Ok(())
}

/// A proper `k`-edge-colouring of a `k`-regular graph without loops or
/// semi-edges. Bipartite graphs are split into `k` perfect matchings; other
/// graphs are searched exhaustively and may fail with `NotColorable`.
pub fn proper_edge_coloring(g: &Multigraph, k: usize) -> Result<EdgeColoring> {
    check_regular(g, k)?;
    let colors = if g.two_coloring().is_some() {
        by_matchings(g, k)
    } else {
        by_search(g, k).ok_or_else(|| Error::NotColorable(format!("no proper {k}-edge-colouring")))?
    };
    let coloring = EdgeColoring { colors, k };
    debug_assert!(coloring.is_proper(g));
    Ok(coloring)
}

/// Peels off one perfect matching per colour. A regular bipartite multigraph
/// always has one.
fn by_matchings(g: &Multigraph, k: usize) -> Vec<usize> {
    let mut colors = vec![usize::MAX; g.edge_count()];
    for c in 0..k {
        let mut rest = Multigraph::new();
        for v in 0..g.vertex_count() {
            rest.add_vertex(g.vertex_id(v)).expect("copied id");
        }
        let mut back = Vec::new();
        for (e, edge) in g.edges().iter().enumerate() {
            if colors[e] == usize::MAX {
                rest.add_ordinary(edge.id.clone(), edge.ends[0], edge.ends[1])
                    .expect("copied edge");
                back.push(e);
            }
        }
        let m = maximum_matching(&rest);
        assert!(m.perfect, "regular bipartite graph without a perfect matching");
        for e in m.edges {
            colors[back[e]] = c;
        }
    }
    colors
}

/// Backtracking over edges in index order. The edges at vertex 0 are fixed
/// to colours `0, 1, ...` since colours are interchangeable.
fn by_search(g: &Multigraph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Multigraph, k: usize, e: usize, colors: &mut [usize], used: &mut [u64]) -> bool {
        if e == g.edge_count() {
            return true;
        }
        if colors[e] != usize::MAX {
            return go(g, k, e + 1, colors, used);
        }
        let [a, b] = g.edge(e).ends;
        for c in 0..k {
            let bit = 1u64 << c;
            if (used[a] | used[b]) & bit != 0 {
                continue;
            }
            colors[e] = c;
            used[a] |= bit;
            used[b] |= bit;
            if go(g, k, e + 1, colors, used) {
                return true;
            }
            used[a] &= !bit;
            used[b] &= !bit;
        }
        colors[e] = usize::MAX;
        false
    }
    if k > 64 {
        return None;
    }
    let mut colors = vec![usize::MAX; g.edge_count()];
    let mut used = vec![0u64; g.vertex_count()];
    if g.vertex_count() > 0 {
        for (c, &e) in g.incident(0).iter().enumerate() {
            let [a, b] = g.edge(e).ends;
            colors[e] = c;
            used[a] |= 1 << c;
            used[b] |= 1 << c;
        }
    }
    go(g, k, 0, &mut colors, &mut used).then_some(colors)
}

/// `K_{k,k}` coloured by `(i + j) mod k` on edge `ai-bj`.
pub fn latin_square_coloring(k: usize) -> EdgeColoring {
    EdgeColoring {
        colors: (0..k * k).map(|e| (e / k + e % k) % k).collect(),
        k,
    }
}
